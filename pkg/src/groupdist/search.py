"""Exact distance between isomorphism classes by branch and bound.

``class_distance(a, b)`` is the least ``dist(a_f, b)`` over bijections
``f`` with ``a_f != b``, where ``a_f = apply_bijection(a, f)``.

The search fixes ``b`` and builds the inverse map ``F = f^-1`` (from
elements of ``b`` to elements of ``a``) coset by coset. Stages run over
prime-order subgroups ``H`` of ``b`` in descending order and finally
over ``H = 1``; within a stage ``F`` restricted to ``H`` is a power map
and each new right coset ``H*x`` is mapped by ``F(h*x) = F(h).F(x)``.
"""

from __future__ import annotations

import itertools
import multiprocessing as mp
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .catalog import catalog
from .errors import SizeMismatch, UnsupportedOrder
from .groups import (
    CayleyTable,
    ElementMap,
    apply_bijection,
    automorphism_array,
    element_orders,
    find_isomorphism,
    prime_order_subgroups,
    power,
)
from .metrics import dist, mismatch_value

INF = 1 << 60


@dataclass
class SearchConfig:
    initial_upper_bound: int | None = None
    aut_depth: int = 3
    parallel: bool = False
    budget: int | None = None  # node cap across all stages
    workers: int | None = None

    def __post_init__(self):
        if self.aut_depth < 0:
            raise ValueError("aut_depth must be >= 0")


@dataclass
class SearchResult:
    distance: int | None  # None: nothing at or below the initial bound
    witness: ElementMap | None
    proven: bool
    nodes: int = 0
    lower_bound: int | None = None
    stages: list = field(default_factory=list)

    def to_json(self):
        return {
            "distance": self.distance,
            "proven": self.proven,
            "witness": self.witness.tolist() if self.witness is not None else None,
            "nodes": self.nodes,
        }


def left_division(t: CayleyTable) -> np.ndarray:
    """``L[x, c]`` is the ``y`` with ``x.y = c``."""
    n = t.n
    L = np.empty((n, n), dtype=np.int64)
    rows = np.arange(n)[:, None]
    L[rows, t.table] = np.arange(n)[None, :]
    return L


def transposition_min(t: CayleyTable) -> tuple[int, tuple[int, int]]:
    """Least distance from ``t`` to its isomorph under a transposition."""
    n = t.n
    if n < 5:
        raise UnsupportedOrder("transposition threshold needs n >= 5")
    best = None
    for i, j in itertools.combinations(range(n), 2):
        perm = np.arange(n)
        perm[i], perm[j] = j, i
        d = dist(t, apply_bijection(t, perm))
        if best is None or d < best[0]:
            best = (d, (i, j))
    return best


def _brute_force(a: CayleyTable, b: CayleyTable) -> SearchResult:
    n = a.n
    best, wit = INF, None
    for perm in itertools.permutations(range(n)):
        d = dist(apply_bijection(a, perm), b)
        if 0 < d < best:
            best, wit = d, perm
    if wit is None:
        return SearchResult(None, None, True)
    return SearchResult(best, ElementMap(np.array(wit)), True)


def _coset_layout(b: CayleyTable, H: list[int]):
    """Leaders and element sequence of right cosets ``H*x`` in search order."""
    n = b.n
    seen = set(H)
    leaders, seq = [], list(H)
    for x in range(n):
        if x in seen:
            continue
        coset = [b.mul(h, x) for h in H]
        leaders.append(x)
        seq.extend(coset)
        seen.update(coset)
    return leaders, seq


def _set_stabilizer(auts: np.ndarray, H) -> np.ndarray:
    Hs = sorted(H)
    keep = [i for i, g in enumerate(auts) if sorted(g[Hs].tolist()) == Hs]
    return auts[keep]


def _subgroup_orbit_reps(b: CayleyTable, autB: np.ndarray, subs):
    """One subgroup from each Aut(b)-orbit, keeping the first of each."""
    reps, covered = [], set()
    for s in subs:
        key = tuple(s)
        if key in covered:
            continue
        reps.append(s)
        for g in autB:
            covered.add(tuple(sorted(g[list(s)].tolist())))
    return reps


@dataclass
class _Plan:
    label: str
    H: list
    seeds: list
    leaders: list
    seq: list
    rowlb: np.ndarray
    bonus: int
    autB: np.ndarray


def _plans(a: CayleyTable, b: CayleyTable, autA, autB):
    n = a.n
    oa, ob = element_orders(a), element_orders(b)
    plans = []
    subs = _subgroup_orbit_reps(b, autB, prime_order_subgroups(b))
    mm = np.array([[mismatch_value(n, int(ob[x]), int(oa[y])) for y in range(n)] for x in range(n)],
                  dtype=np.int64)
    for S in subs:
        p = len(S)
        x = next(e for e in S if e != 0)
        H = [power(b, x, i) for i in range(p)]
        seeds = []
        for y in range(n):
            if oa[y] == p:
                seeds.append([power(a, y, i) for i in range(p)])
        leaders, seq = _coset_layout(b, H)
        plans.append(_Plan(f"p={p} H={sorted(S)}", H, seeds, leaders, seq, mm, 0,
                           _set_stabilizer(autB, H)))
    base = 3 if n % 2 else 2
    lb1 = mm.copy()
    matched = ob[:, None] == oa[None, :]
    lb1[matched] = 3
    lb1 = np.maximum(lb1, base)
    lb1[0, :] = 0
    leaders, seq = _coset_layout(b, [0])
    plans.append(_Plan("p=1", [0], [[0]], leaders, seq, lb1, base, autB))
    return plans


def _run_plan(plan, A, B, ldA, ldB, autA, aut_depth, best, budget, pure=False):
    core = _kernels.pure if pure else _kernels.core
    return core.search_stage(A, B, ldA, ldB, plan.rowlb, plan.bonus, autA, plan.autB, aut_depth,
                             plan.H, plan.seeds, plan.leaders, plan.seq, best, budget)


def class_distance(a: CayleyTable, b: CayleyTable, cfg: SearchConfig | None = None,
                   *, pure: bool = False) -> SearchResult:
    """Distance between the isomorphism class of ``a`` and the table ``b``.

    By relabeling invariance this equals the class-to-class distance.
    """
    cfg = cfg or SearchConfig()
    if a.n != b.n:
        raise SizeMismatch(f"orders differ: {a.n} vs {b.n}")
    n = a.n
    if n < 2:
        return SearchResult(None, None, True)
    if n < 5:
        return _brute_force(a, b)

    best_val, best_wit = INF, None
    iso = find_isomorphism(a, b)
    if iso is not None:
        d, (i, j) = transposition_min(b)
        ell = np.arange(n)
        ell[i], ell[j] = j, i
        best_val, best_wit = d, ElementMap(ell[iso.image])
    if cfg.initial_upper_bound is not None and cfg.initial_upper_bound + 1 < best_val:
        best_val, best_wit = cfg.initial_upper_bound + 1, None

    A = np.ascontiguousarray(a.table, dtype=np.int64)
    B = np.ascontiguousarray(b.table, dtype=np.int64)
    ldA, ldB = left_division(a), left_division(b)
    autA, autB = automorphism_array(a), automorphism_array(b)
    plans = _plans(a, b, autA, autB)

    if cfg.parallel:
        return _parallel(plans, A, B, ldA, ldB, autA, cfg, best_val, best_wit, pure)

    best = np.array([best_val], dtype=np.int64)
    nodes = 0
    aborted = False
    stages = []
    for plan in plans:
        budget = -1 if cfg.budget is None else max(0, cfg.budget - nodes)
        found, used, ab = _run_plan(plan, A, B, ldA, ldB, autA, cfg.aut_depth, best, budget, pure)
        nodes += used
        stages.append((plan.label, used))
        if found is not None and found[0] < best_val:
            best_val = found[0]
            best_wit = ElementMap(_invert(found[1]))
        if ab:
            aborted = True
            break
    return _finish(best_val, best_wit, not aborted, nodes, stages, cfg)


def _invert(f):
    inv = [0] * len(f)
    for x, y in enumerate(f):
        inv[y] = x
    return np.array(inv)


def _finish(best_val, best_wit, proven, nodes, stages, cfg):
    if best_wit is None:
        lb = best_val if proven else None
        return SearchResult(None, None, proven, nodes, lb, stages)
    return SearchResult(int(best_val), best_wit, proven, nodes, int(best_val) if proven else None, stages)


# ---------------------------------------------------------------------------
# parallel driver

_shared = {}


def _worker_init(buf, lock):
    _shared["best"] = np.frombuffer(buf, dtype=np.int64)
    _shared["lock"] = lock


def _worker(args):
    plan, A, B, ldA, ldB, autA, aut_depth, budget, pure = args
    best = _shared["best"]
    found, used, ab = _run_plan(plan, A, B, ldA, ldB, autA, aut_depth, best, budget, pure)
    if found is not None:
        with _shared["lock"]:
            if found[0] < best[0]:
                best[0] = found[0]
    return found, used, ab


def _split(plans):
    """Top-level branches: one task per (stage, seed)."""
    tasks = []
    for plan in plans:
        for s in plan.seeds:
            tasks.append(_Plan(plan.label, plan.H, [s], plan.leaders, plan.seq, plan.rowlb,
                               plan.bonus, plan.autB))
    return tasks


def _parallel(plans, A, B, ldA, ldB, autA, cfg, best_val, best_wit, pure):
    # the p=1 bonus assumes all p>1 stages are exhausted, so the p=1
    # stage runs only after the others complete
    head, tail = plans[:-1], plans[-1:]
    ctx = mp.get_context("fork")
    buf = ctx.RawArray("q", 1)
    lock = ctx.Lock()
    np.frombuffer(buf, dtype=np.int64)[0] = best_val
    nodes, aborted, stages = 0, False, []
    budget = -1 if cfg.budget is None else cfg.budget
    with ctx.Pool(cfg.workers, initializer=_worker_init, initargs=(buf, lock)) as pool:
        for group in (head, tail):
            tasks = _split(group)
            args = [(t, A, B, ldA, ldB, autA, cfg.aut_depth, budget, True if pure else False) for t in tasks]
            for t, (found, used, ab) in zip(tasks, pool.map(_worker, args) if tasks else []):
                nodes += used
                stages.append((t.label, used))
                aborted = aborted or ab
                if found is not None and found[0] < best_val:
                    best_val, best_wit = found[0], ElementMap(_invert(found[1]))
    return _finish(best_val, best_wit, not aborted, nodes, stages, cfg)


# ---------------------------------------------------------------------------
# tables


@dataclass
class NeighborMatrix:
    n: int
    names: list
    values: list  # values[i][j] is an int or None
    proven: list

    def to_json(self):
        return {"n": self.n, "names": self.names, "matrix": self.values, "proven": self.proven}


def neighbor_matrix(n: int, cfg: SearchConfig | None = None, cache=None) -> NeighborMatrix:
    """Class distances between all groups of order ``n`` in catalog order."""
    cfg = cfg or SearchConfig()
    cat = catalog(n)
    k = len(cat)
    vals = [[None] * k for _ in range(k)]
    prov = [[True] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            key = (cat[i][0], cat[j][0])
            hit = cache.get(*key) if cache is not None else None
            # an unproven entry is reused only by another budgeted run
            if hit is not None and (hit[1] or cfg.budget is not None):
                d, ok = hit
            else:
                res = class_distance(cat[i][1], cat[j][1], cfg)
                d, ok = res.distance, res.proven
                if cache is not None and d is not None:
                    cache.put(key[0], key[1], d, ok)
            vals[i][j] = vals[j][i] = d
            prov[i][j] = prov[j][i] = ok
    return NeighborMatrix(n, [c[0] for c in cat], vals, prov)


def delta_iso_cyclic(n: int, cfg: SearchConfig | None = None) -> SearchResult:
    """``dist([C_n], [C_n])``."""
    from .groups import cyclic

    c = cyclic(n)
    return class_distance(c, c, cfg)
