"""Rainbow matchings in restricted edge-colored graphs.

``mu(l, v)`` is the least edge count forcing a rainbow ``l``-matching in
every restricted graph on ``v`` vertices. It is computed by adding one
color class at a time to every graph of the previous stage, keeping one
representative per isomorphism class (colors may be permuted).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import TooLarge
from .groups import CayleyTable
from .metrics import profile, rstu

MAX_CANON_V = 12
MAX_MU_V = 10
MAX_MU_ELL = 3


@dataclass
class ColoredGraph:
    v: int
    edges: list = field(default_factory=list)  # (x, y, color) with x < y

    def __post_init__(self):
        self.edges = [(min(x, y), max(x, y), c) for x, y, c in self.edges]

    @property
    def colorClasses(self) -> dict:
        out = {}
        for x, y, c in self.edges:
            out.setdefault(c, []).append((x, y))
        return out

    def is_simple(self) -> bool:
        pairs = [(x, y) for x, y, _ in self.edges]
        return len(pairs) == len(set(pairs)) and all(x != y for x, y in pairs)

    def __len__(self):
        return len(self.edges)


def is_restricted(g: ColoredGraph) -> bool:
    for es in g.colorClasses.values():
        if len(es) > 3:
            return False
        deg = {}
        for x, y in es:
            deg[x] = deg.get(x, 0) + 1
            deg[y] = deg.get(y, 0) + 1
        if any(d > 2 for d in deg.values()):
            return False
    return True


def _rainbow(edges, ell, used_v=0, used_c=frozenset(), start=0):
    if ell == 0:
        return []
    for i in range(start, len(edges)):
        x, y, c = edges[i]
        bits = (1 << x) | (1 << y)
        if used_v & bits or c in used_c:
            continue
        rest = _rainbow(edges, ell - 1, used_v | bits, used_c | {c}, i + 1)
        if rest is not None:
            return [edges[i]] + rest
    return None


def has_rainbow_matching(g: ColoredGraph, ell: int):
    """``(True, witness)`` or ``(False, None)``."""
    if ell < 1:
        raise ValueError("ell must be positive")
    w = _rainbow(list(g.edges), ell)
    return (w is not None), w


# -- canonical form -------------------------------------------------------------


def _refine(adj, classes, cells):
    """Split cells by neighbourhood signatures until stable."""
    while True:
        pos = {}
        for i, cell in enumerate(cells):
            for x in cell:
                pos[x] = i
        new = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {}
            for x in cell:
                s = []
                for y, c in adj[x]:
                    shape = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in classes[c]))
                    s.append((pos[y], shape))
                sig[x] = tuple(sorted(s))
            for key in sorted(set(sig.values())):
                new.append([x for x in cell if sig[x] == key])
        if len(new) == len(cells):
            return new
        cells = new


def _form(order, classes):
    lab = {x: i for i, x in enumerate(order)}
    return tuple(sorted(tuple(sorted(tuple(sorted((lab[a], lab[b]))) for a, b in es))
                        for es in classes.values()))


def canonical_form(g: ColoredGraph) -> bytes:
    """Invariant of ``g`` up to vertex relabeling and color renaming.

    Individualization and refinement; the form is the least relabeled
    class list over all leaves of the search tree.
    """
    if g.v > MAX_CANON_V:
        raise TooLarge(f"canonical form limited to {MAX_CANON_V} vertices")
    classes = g.colorClasses
    adj = {x: [] for x in range(g.v)}
    for x, y, c in g.edges:
        adj[x].append((y, c))
        adj[y].append((x, c))
    cells0 = [[x for x in range(g.v) if adj[x]], [x for x in range(g.v) if not adj[x]]]
    cells0 = [c for c in cells0 if c]
    best = None

    def search(cells):
        nonlocal best
        cells = _refine(adj, classes, cells)
        # isolated vertices are interchangeable, never branch on them
        target = next((i for i, c in enumerate(cells) if len(c) > 1 and adj[c[0]]), None)
        if target is None:
            order = [x for c in cells for x in c]
            f = _form(order, classes)
            if best is None or f < best:
                best = f
            return
        cell = cells[target]
        for x in cell:
            rest = [y for y in cell if y != x]
            search(cells[:target] + [[x], rest] + cells[target + 1:])

    search(cells0)
    out = bytearray([g.v])
    for es in best:
        out.append(255)
        for a, b in es:
            out += bytes((a, b))
    return bytes(out)


# -- threshold computation ----------------------------------------------------


@dataclass
class MuResult:
    ell: int
    v: int
    value: int
    witness: ColoredGraph | None  # extremal graph without a rainbow matching
    graphs: int = 0  # isomorphism classes generated
    source: str = "computed"


def _color_classes(avail, isolated):
    """Valid new color classes from the available edges.

    Isolated vertices may be used only as a prefix of the sorted list.
    """
    for size in (3, 2, 1):
        for es in itertools.combinations(avail, size):
            deg = {}
            for x, y in es:
                deg[x] = deg.get(x, 0) + 1
                deg[y] = deg.get(y, 0) + 1
            if any(d > 2 for d in deg.values()):
                continue
            touched = sorted(x for x in deg if x in isolated)
            if touched != isolated[: len(touched)]:
                continue
            yield es


def _available(v, edges, ell):
    """Edges meeting every rainbow (ell-1)-matching, not yet present."""
    present = {(x, y) for x, y, _ in edges}
    covers = []
    for combo in itertools.combinations(edges, ell - 1):
        vs = set()
        cs = set()
        ok = True
        for x, y, c in combo:
            if x in vs or y in vs or c in cs:
                ok = False
                break
            vs.update((x, y))
            cs.add(c)
        if ok:
            covers.append(vs)
    out = []
    for x, y in itertools.combinations(range(v), 2):
        if (x, y) in present:
            continue
        if all(x in s or y in s for s in covers):
            out.append((x, y))
    return out


def compute_mu(ell: int, v: int) -> MuResult:
    """Staged isomorph-free generation of rainbow-free restricted graphs."""
    if ell > MAX_MU_ELL or v > MAX_MU_V or ell < 1 or v < 2:
        raise TooLarge(f"mu({ell},{v}) is outside the supported range")
    best = ColoredGraph(v, [])
    # stage entries: (edges, last class size, singleton used)
    stage = [([], 3, False)]
    total = 1
    color = 0
    while stage:
        nxt = {}
        for edges, last, single in stage:
            if single:
                continue  # a further color would be a second singleton or larger
            avail = _available(v, edges, ell)
            if not avail:
                continue
            used = {x for e in edges for x in e[:2]}
            isolated = [x for x in range(v) if x not in used]
            for es in _color_classes(avail, isolated):
                if len(es) > last:
                    continue
                new = edges + [(x, y, color) for x, y in es]
                g = ColoredGraph(v, new)
                key = canonical_form(g)
                if key not in nxt:
                    nxt[key] = (new, len(es), len(es) == 1)
                    if len(new) > len(best):
                        best = g
        stage = list(nxt.values())
        total += len(stage)
        color += 1
    return MuResult(ell, v, len(best) + 1, best, total)


def elementary_lower_bound(ell: int, v: int) -> int:
    """``1 + (l-1)(v - l/2)``: a vertex cover of size l-1 blocks every l-matching."""
    return 1 + ((ell - 1) * (2 * v - ell)) // 2


def mu(ell: int, v: int, cache=None, recompute: bool = False) -> int:
    """Rainbow threshold, read from ``cache`` unless ``recompute`` is set."""
    if cache is not None and not recompute:
        hit = cache.get(ell, v)
        if hit is not None:
            return hit
    val = compute_mu(ell, v).value
    if cache is not None:
        cache.put(ell, v, val)
    return val


# -- the graph of U-cells -------------------------------------------------------


@dataclass
class GammaU:
    graph: ColoredGraph
    provenance: dict  # (x, y) -> cell (a, b) of U
    multi_edges: int  # edges before suppressing duplicates
    u: int


def build_gamma_u(a: CayleyTable, b: CayleyTable) -> GammaU:
    """Graph on ``G \\ K`` with an edge ``{y, x.y}`` colored ``x`` per U-cell ``(x, y)``.

    ``a`` plays the role of the operation defining the products.
    """
    sets = rstu(a, b)
    A = a.table
    edges, prov = [], {}
    multi = 0
    for x, y in sorted(sets.U):
        p = int(A[x, y])
        if p == y:
            continue
        multi += 1
        key = (min(y, p), max(y, p))
        if key in prov:
            continue
        prov[key] = (x, y)
        edges.append((key[0], key[1], x))
    # vertices are renumbered onto 0..n-k-1 in ascending order
    K = set(profile(a, b).K)
    verts = [z for z in range(a.n) if z not in K]
    idx = {z: i for i, z in enumerate(verts)}
    g = ColoredGraph(len(verts), [(idx[x], idx[y], c) for x, y, c in edges])
    prov = {(idx[x], idx[y]): cell for (x, y), cell in prov.items()}
    return GammaU(g, prov, multi, sets.u)
