"""Two targeted searches around the cyclic group.

``m2_min_distance`` finds the groups closest to ``C_n`` among those
whose table differs from ``C_n`` in exactly two cells of the row of a
generator. ``cyclic_row_search`` alters ``d`` cells of one row of a
given table and rebuilds the cyclic group generated by that row.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .catalog import identify_name
from .errors import PreconditionFailed, UnsupportedOrder
from .groups import CayleyTable, cyclic, element_orders, verify_group
from .metrics import dist


@dataclass(frozen=True)
class M2Candidate:
    n: int
    v: int
    w: int
    alpha: int
    beta: int


@dataclass
class M2Result:
    distance: int
    group: str
    achievers: list = field(default_factory=list)
    table: CayleyTable | None = None
    candidates: int = 0
    groups_found: int = 0

    def to_json(self):
        return {
            "minDistance": self.distance,
            "group": self.group,
            "achievers": [[c.v, c.w, c.alpha, c.beta] for c in self.achievers],
            "candidates": self.candidates,
        }


def _row_swap(n, v, w):
    """Row of the generator 1 in C_n with the cells at v and w exchanged."""
    row = [(x + 1) % n for x in range(n)]
    row[v], row[w] = row[w], row[v]
    return row


def m2_table(n: int, v: int, w: int, alpha: int, beta: int):
    """The operation determined by the modified row and ``(alpha, beta)``.

    Returns None when the modified row does not give the generator
    order ``n/2``.
    """
    half = n // 2
    pi = _row_swap(n, v, w)
    powers = [0]
    for _ in range(half - 1):
        powers.append(pi[powers[-1]])
    if pi[powers[-1]] != 0 or len(set(powers)) != half:
        return None
    inA = set(powers)
    b = min(x for x in range(n) if x not in inA)
    coset = [b]
    for _ in range(half - 1):
        coset.append(pi[coset[-1]])
    # element (i, e) is a^i (e = 0) or a^i b (e = 1)
    elem = np.empty((half, 2), dtype=np.int64)
    elem[:, 0] = powers
    elem[:, 1] = coset
    i = np.arange(half)
    I, J = i[:, None], i[None, :]
    T = np.empty((n, n), dtype=np.int64)
    T[np.ix_(elem[:, 0], elem[:, 0])] = elem[(I + J) % half, 0]
    T[np.ix_(elem[:, 0], elem[:, 1])] = elem[(I + J) % half, 1]
    T[np.ix_(elem[:, 1], elem[:, 0])] = elem[(I + J * alpha) % half, 1]
    T[np.ix_(elem[:, 1], elem[:, 1])] = elem[(I + J * alpha + beta) % half, 0]
    return CayleyTable(T)


def m2_candidates(n: int):
    """Yield ``(candidate, table)`` for every admissible parameter choice."""
    half = n // 2
    for v, w in itertools.combinations(range(n), 2):
        if m2_table(n, v, w, 1, 0) is None:
            continue
        for alpha in range(1, half):
            for beta in range(half):
                yield M2Candidate(n, v, w, alpha, beta), m2_table(n, v, w, alpha, beta)


def m2_min_distance(n: int) -> M2Result:
    """Nearest group to ``C_n`` having a generator row with two changes."""
    if n < 4 or n % 2:
        raise UnsupportedOrder("the two-cell search needs even n >= 4")
    base = cyclic(n)
    best, achievers, best_table = None, [], None
    seen = groups = 0
    for cand, t in m2_candidates(n):
        seen += 1
        if verify_group(t):
            continue
        groups += 1
        d = dist(t, base)
        if d == 0:
            continue
        if best is None or d < best:
            best, achievers, best_table = d, [cand], t
        elif d == best:
            achievers.append(cand)
    if best is None:
        raise UnsupportedOrder(f"no group candidates for n={n}")
    return M2Result(best, identify_name(best_table), achievers, best_table, seen, groups)


# ---------------------------------------------------------------------------


@dataclass
class CyclicRowResult:
    n: int
    d: int
    distance: int | None  # None when no alteration yields a generator
    rows: dict = field(default_factory=dict)  # row -> (best, count)

    def to_json(self):
        return {
            "minDistance": self.distance,
            "n": self.n,
            "d": self.d,
            "achievers": [r for r, (b, _) in sorted(self.rows.items())
                          if b is not None and b == self.distance],
        }


def derangements(d: int) -> list[tuple[int, ...]]:
    return [p for p in itertools.permutations(range(d)) if all(p[i] != i for i in range(d))]


def cyclic_row_search(base: CayleyTable, d: int, *, pure: bool = False) -> CyclicRowResult:
    """Closest cyclic table obtained by changing ``d`` cells of one row.

    Only rows whose order ``l`` in ``base`` satisfies ``l*d >= n`` can
    become generators after ``d`` changes, so others are skipped.
    """
    if d < 3:
        raise PreconditionFailed("d", "d must be at least 3")
    core = _kernels.pure if pure else _kernels.core
    n = base.n
    orders = element_orders(base)
    der = derangements(d)
    table = np.ascontiguousarray(base.table)
    best = None
    rows = {}
    for a in range(1, n):
        if orders[a] * d < n:
            continue
        b, cnt = core.cyclic_row_search(table, a, d, der)
        rows[a] = (b, cnt)
        if b is not None and (best is None or b < best):
            best = b
    return CyclicRowResult(n, d, best, rows)


def cyclic_row_table(base: CayleyTable, row: int, cols, values) -> CayleyTable | None:
    """Rebuild the cyclic table generated by an altered row, or None."""
    n = base.n
    newrow = base.table[row].copy()
    for c, v in zip(cols, values):
        newrow[c] = v
    pos = [-1] * n
    x = 0
    for i in range(n):
        if pos[x] != -1:
            return None
        pos[x] = i
        x = int(newrow[x])
    if x != 0:
        return None
    elems = np.empty(n, dtype=np.int64)
    elems[pos] = np.arange(n)
    P = np.asarray(pos)
    return CayleyTable(elems[(P[:, None] + P[None, :]) % n])
