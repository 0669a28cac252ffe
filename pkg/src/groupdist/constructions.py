"""Pairs of groups realizing specific distances.

The cyclic and dihedral constructions twist a group by a central
element along a cyclic or dihedral quotient and land at distance
``n^2/4``. Constructions 1 to 3 give the small distances below the
transposition threshold, and ``pair_extension`` lifts a pair to a
larger order by a direct factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .catalog import identify_name
from .errors import EvenA, EvenOrder, NotAbelian, PreconditionFailed
from .groups import (
    CayleyTable,
    apply_bijection,
    center,
    cyclic,
    direct_product,
    element_order,
    generalized_dihedral,
    inverses,
    is_abelian,
    is_normal,
    normal_subgroups,
    power,
    right_cosets,
    verify_group,
)
from .metrics import dist


@dataclass(frozen=True)
class SignFunction:
    """``sigma(i)`` is 1 above ``M``, 0 on ``M = {-m+1..m}``, -1 below."""

    m: int

    def __call__(self, i: int) -> int:
        if i > self.m:
            return 1
        if i < 1 - self.m:
            return -1
        return 0


@dataclass
class ConstructionResult:
    left: CayleyTable
    right: CayleyTable
    claimedDistance: int
    actualDistance: int
    label: str = ""

    @property
    def ok(self) -> bool:
        return self.actualDistance == self.claimedDistance

    def classes(self):
        return identify_name(self.left), identify_name(self.right)

    def to_json(self):
        a, b = self.classes()
        return {"label": self.label, "left": a, "right": b, "n": self.left.n,
                "claimedDistance": self.claimedDistance, "actualDistance": self.actualDistance}


def _result(left, right, claimed, label):
    for t, side in ((left, "left"), (right, "right")):
        if verify_group(t):
            raise PreconditionFailed("group", f"{label}: {side} table is not a group")
    return ConstructionResult(left, right, claimed, dist(left, right), label)


# -- quotient bookkeeping -----------------------------------------------------


class _Quotient:
    """Cosets of a normal subgroup with the induced multiplication."""

    def __init__(self, g: CayleyTable, s):
        self.g = g
        self.cosets = right_cosets(g, sorted(s))
        self.of = np.empty(g.n, dtype=np.int64)
        for i, c in enumerate(self.cosets):
            self.of[list(c)] = i
        reps = [c[0] for c in self.cosets]
        k = len(reps)
        self.table = CayleyTable(np.array([[self.of[g.mul(reps[i], reps[j])] for j in range(k)]
                                           for i in range(k)]))

    def mul(self, i, j):
        return self.table.mul(i, j)

    def power_index(self, alpha, two_m):
        """Map coset -> exponent ``i`` in ``M`` with coset = alpha^i (or None)."""
        m = two_m // 2
        out = {}
        x = 0
        for e in range(two_m):
            i = e if e <= m else e - two_m
            out[x] = i
            x = self.mul(x, alpha)
        return out


def _power_elem(g, x, k):
    if k >= 0:
        return power(g, x, k)
    return power(g, int(inverses(g)[x]), -k)


# -- the two quarter-distance constructions ------------------------------------


def cyclic_construction(g: CayleyTable, s, h: int, m: int, alpha: int | None = None) -> ConstructionResult:
    """``x*y = x.y.h^sigma(i+j)`` for ``x`` in ``alpha^i``, ``y`` in ``alpha^j``."""
    s = sorted(set(int(x) for x in s))
    if not is_normal(g, s):
        raise PreconditionFailed("normal", "s is not a normal subgroup")
    if g.n != len(s) * 2 * m:
        raise PreconditionFailed("index", f"g/s must have order 2m = {2 * m}")
    if h == 0 or h not in s or h not in center(g):
        raise PreconditionFailed("central", "h must be a non-identity central element of s")
    q = _Quotient(g, s)
    qt = q.table
    if alpha is None:
        alpha = next((c for c in range(qt.n) if element_order(qt, c) == 2 * m), None)
    else:
        alpha = int(q.of[alpha])
    if alpha is None or element_order(qt, alpha) != 2 * m:
        raise PreconditionFailed("cyclic-quotient", "g/s is not cyclic of order 2m")
    idx = q.power_index(alpha, 2 * m)
    sigma = SignFunction(m)
    e = [idx[int(q.of[x])] for x in range(g.n)]
    hp = {k: _power_elem(g, h, k) for k in (-1, 0, 1)}
    G = g.table
    T = np.empty_like(G)
    for x in range(g.n):
        for y in range(g.n):
            T[x, y] = G[G[x, y], hp[sigma(e[x] + e[y])]]
    return _result(g, CayleyTable(T), g.n * g.n // 4, "cyclic")


def _dihedral_generators(qt: CayleyTable, m: int):
    """Pairs of involutions ``(beta, gamma)`` whose product has order 2m."""
    invs = [x for x in range(1, qt.n) if qt.mul(x, x) == 0]
    for b, c in itertools.permutations(invs, 2):
        if element_order(qt, qt.mul(b, c)) == 2 * m:
            yield b, c


def dihedral_construction(g: CayleyTable, s, h: int, m: int, beta: int | None = None,
                          gamma: int | None = None) -> ConstructionResult:
    """``x*y = x.y.h^((-1)^r sigma(i+j))`` with ``r`` the half of ``y``.

    ``beta`` and ``gamma`` are elements of ``g`` whose cosets are the
    chosen involutions of ``g/s``; by default the first valid pair.
    """
    s = sorted(set(int(x) for x in s))
    if not is_normal(g, s):
        raise PreconditionFailed("normal", "s is not a normal subgroup")
    if g.n != len(s) * 4 * m:
        raise PreconditionFailed("index", f"g/s must have order 4m = {4 * m}")
    q = _Quotient(g, s)
    qt = q.table
    if beta is None or gamma is None:
        pair = next(_dihedral_generators(qt, m), None)
        if pair is None:
            raise PreconditionFailed("dihedral-quotient", "g/s is not dihedral of order 4m")
        b, c = pair
    else:
        b, c = int(q.of[beta]), int(q.of[gamma])
        if b == 0 or c == 0 or qt.mul(b, b) or qt.mul(c, c) or element_order(qt, qt.mul(b, c)) != 2 * m:
            raise PreconditionFailed("dihedral-quotient", "beta, gamma are not suitable involutions")
    alpha = qt.mul(b, c)
    idx = q.power_index(alpha, 2 * m)
    G = g.table
    g0 = [x for x in range(g.n) if int(q.of[x]) in idx]
    g1 = [x for x in range(g.n) if int(q.of[x]) not in idx]
    if h == 0 or h not in s:
        raise PreconditionFailed("h-in-s", "h must be a non-identity element of s")
    if any(G[h, x] != G[x, h] for x in g0):
        raise PreconditionFailed("central-g0", "h must commute with every element of G0")
    if any(G[G[h, x], h] != x for x in g1):
        raise PreconditionFailed("hxh", "hxh = x must hold on G1")
    # left index: x in alpha^i or e alpha^i; right index: y in alpha^j or alpha^j f
    left, right, half = [0] * g.n, [0] * g.n, [0] * g.n
    for x in range(g.n):
        cx = int(q.of[x])
        if cx in idx:
            left[x] = right[x] = idx[cx]
        else:
            left[x] = idx[qt.mul(b, cx)]  # beta is its own inverse
            right[x] = idx[qt.mul(cx, c)]
            half[x] = 1
    sigma = SignFunction(m)
    hp = {k: _power_elem(g, h, k) for k in (-1, 0, 1)}
    T = np.empty_like(G)
    for x in range(g.n):
        for y in range(g.n):
            k = sigma(left[x] + right[y]) * (-1 if half[y] else 1)
            T[x, y] = G[G[x, y], hp[k]]
    return _result(g, CayleyTable(T), g.n * g.n // 4, "dihedral")


def quarter_inputs(g: CayleyTable):
    """All valid inputs of both constructions for ``g``.

    Yields ``("cyclic", s, h, m, alpha)`` and
    ``("dihedral", s, h, m, beta, gamma)`` with group elements as
    coset representatives.
    """
    Z = set(center(g))
    for s in normal_subgroups(g):
        if len(s) == g.n or g.n % (2 * len(s)):
            continue
        q = _Quotient(g, s)
        qt = q.table
        idx_n = qt.n
        reps = [c[0] for c in q.cosets]
        if idx_n % 2 == 0:
            m = idx_n // 2
            gens = [c for c in range(qt.n) if element_order(qt, c) == 2 * m]
            for c in gens:
                for h in s:
                    if h and h in Z:
                        yield ("cyclic", tuple(s), h, m, reps[c])
        if idx_n % 4 == 0:
            m = idx_n // 4
            for b, c in _dihedral_generators(qt, m):
                alpha = qt.mul(b, c)
                idx = q.power_index(alpha, 2 * m)
                g0 = [x for x in range(g.n) if int(q.of[x]) in idx]
                g1 = [x for x in range(g.n) if int(q.of[x]) not in idx]
                for h in s:
                    if h == 0:
                        continue
                    if any(g.mul(h, x) != g.mul(x, h) for x in g0):
                        continue
                    if any(g.mul(g.mul(h, x), h) != x for x in g1):
                        continue
                    yield ("dihedral", tuple(s), h, m, reps[b], reps[c])


def run_quarter(g: CayleyTable, inp) -> ConstructionResult:
    if inp[0] == "cyclic":
        _, s, h, m, alpha = inp
        return cyclic_construction(g, s, h, m, alpha)
    _, s, h, m, b, c = inp
    return dihedral_construction(g, s, h, m, b, c)


# -- constructions below the threshold ------------------------------------------


def construction1(o: CayleyTable) -> ConstructionResult:
    """``D(O)`` against ``O x C2``, distance ``n(n-2)/2``."""
    if o.n % 2 == 0:
        raise EvenOrder()
    if not is_abelian(o):
        raise NotAbelian()
    if o.n < 3:
        raise PreconditionFailed("order", "base order must be at least 3")
    left = generalized_dihedral(o)
    right = direct_product(o, cyclic(2))
    n = 2 * o.n
    return _result(left, right, n * (n - 2) // 2, "c1")


def construction2_tables(a: int, b: int):
    """The twisted-carry operation and the relabeled direct product on ``C_a x C_b``.

    Elements ``(s, t)`` are paired as ``s*b + t``.
    """
    n = a * b
    s = np.arange(n) // b
    t = np.arange(n) % b
    S, U = s[:, None], s[None, :]
    carry = (S + U >= a).astype(np.int64)
    odot = ((S + U) % a) * b + (t[:, None] + t[None, :] + carry) % b
    usual = direct_product(cyclic(a), cyclic(b))
    # transporting along the inverse of (s,t) -> (s,t+1) for s >= (a+1)/2
    psi = np.where(s >= (a + 1) // 2, s * b + (t - 1) % b, s * b + t)
    return CayleyTable(odot), apply_bijection(usual, psi)


def construction2(a: int, b: int) -> ConstructionResult:
    """Distance ``n^2 (1 - a^-2) / 4`` with ``n = ab``; left is cyclic."""
    if a < 3 or a % 2 == 0:
        raise EvenA()
    if b < 2:
        raise PreconditionFailed("b", "b must be at least 2")
    left, right = construction2_tables(a, b)
    n = a * b
    claimed = (n * n * (a * a - 1)) // (4 * a * a)
    return _result(left, right, claimed, f"c2({a},{b})")


def construction2_isomorphism(a: int, b: int) -> list[int]:
    """``(s, t) -> s + a t`` from the twisted operation onto ``C_ab``."""
    return [(x // b) + a * (x % b) for x in range(a * b)]


def _swap_perm(n, pairs):
    p = list(range(n))
    for x, y in pairs:
        p[x], p[y] = y, x
    return p


def _extension(t: CayleyTable, z: int) -> CayleyTable:
    """``t`` extended by ``x`` with ``x^2 = z`` and ``x a x^-1 = a^-1``.

    ``t`` must be abelian and ``z`` of order at most 2; elements
    ``(a, e)`` are paired as ``2a + e``. ``z = 0`` gives the inversion
    extension, an involution ``z`` a generalized dicyclic group.
    """
    n = t.n
    A = t.table
    inv = inverses(t)
    T = np.empty((2 * n, 2 * n), dtype=np.int64)
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    T[0::2, 0::2] = 2 * A[a, b]
    T[0::2, 1::2] = 2 * A[a, b] + 1
    T[1::2, 0::2] = 2 * A[a, inv[b]] + 1
    T[1::2, 1::2] = 2 * A[A[a, inv[b]], z]
    return CayleyTable(T)


def twisted_extension_pair(left: CayleyTable, right: CayleyTable, z: int = 0):
    """Extend both members of an abelian pair by the same inverting element."""
    return _extension(left, z), _extension(right, z)


def construction3() -> list[ConstructionResult]:
    """Isomorphs of ``C7`` and ``C9`` at 18 and their lifts to order 18 at 72."""
    c7, c9 = cyclic(7), cyclic(9)
    r7 = apply_bijection(c7, _swap_perm(7, [(1, 2), (5, 6)]))
    # printed with labels 1..9, i.e. (36)(47)(58) shifted down by one
    r9 = apply_bijection(c9, _swap_perm(9, [(2, 5), (3, 6), (4, 7)]))
    out = [_result(c7, r7, 18, "c3 C7"), _result(c9, r9, 18, "c3 C9")]
    a, b = pair_extension((c9, r9), cyclic(2))
    out.append(_result(a, b, 72, "c3 C9 x C2"))
    a, b = twisted_extension_pair(c9, r9)
    out.append(_result(a, b, 72, "c3 C9 inversion"))
    return out


def pair_extension(pair, k: CayleyTable):
    """Direct products ``(A x k, B x k)``; distances scale by ``|k|^2``."""
    a, b = pair
    return direct_product(a, k), direct_product(b, k)


def extension_catalogue() -> list[ConstructionResult]:
    """Lifts of the Construction 2 pairs to order 12 and 18."""
    out = []
    c6, r6 = construction2_tables(3, 2)
    a, b = pair_extension((c6, r6), cyclic(2))
    out.append(_result(a, b, 32, "C6 pair x C2"))
    a, b = pair_extension((c6, r6), cyclic(3))
    out.append(_result(a, b, 72, "C6 pair x C3"))
    a, b = twisted_extension_pair(c6, r6, 0)
    out.append(_result(a, b, 32, "C6 pair inversion"))
    z = next(x for x in range(1, 6) if c6.mul(x, x) == 0 and r6.mul(x, x) == 0)
    a, b = twisted_extension_pair(c6, r6, z)
    out.append(_result(a, b, 32, "C6 pair dicyclic"))
    c9, r9 = construction2_tables(3, 3)
    a, b = pair_extension((c9, r9), cyclic(2))
    out.append(_result(a, b, 72, "C9 pair x C2"))
    a, b = twisted_extension_pair(c9, r9)
    out.append(_result(a, b, 72, "C9 pair inversion"))
    return out


# -- printed example pairs ---------------------------------------------------------

_FIX8 = (
    """1 2 3 4 5 6 7 8
2 1 4 3 6 5 8 7
3 4 1 2 8 7 6 5
4 3 2 1 7 8 5 6
5 6 8 7 3 4 2 1
6 5 7 8 4 3 1 2
7 8 6 5 2 1 3 4
8 7 5 6 1 2 4 3""",
    """1 2 3 4 5 6 7 8
2 1 4 3 6 5 8 7
3 4 2 1 7 8 6 5
4 3 1 2 8 7 5 6
5 6 7 8 3 4 2 1
6 5 8 7 4 3 1 2
7 8 6 5 2 1 4 3
8 7 5 6 1 2 3 4""",
)

_FIX9 = (
    """1 2 3 4 5 6 7 8 9
2 3 1 5 6 4 8 9 7
3 1 2 6 4 5 9 7 8
4 5 6 7 8 9 1 2 3
5 6 4 8 9 7 2 3 1
6 4 5 9 7 8 3 1 2
7 8 9 1 2 3 4 5 6
8 9 7 2 3 1 5 6 4
9 7 8 3 1 2 6 4 5""",
    """1 2 3 4 5 6 7 8 9
2 3 1 5 6 4 8 9 7
3 1 2 6 4 5 9 7 8
4 5 6 7 8 9 2 3 1
5 6 4 8 9 7 3 1 2
6 4 5 9 7 8 1 2 3
7 8 9 2 3 1 5 6 4
8 9 7 3 1 2 6 4 5
9 7 8 1 2 3 4 5 6""",
)


def _parse_block(text):
    return CayleyTable(np.array([[int(v) - 1 for v in line.split()] for line in text.splitlines()]))


@dataclass
class Fixture:
    name: str
    left: CayleyTable
    right: CayleyTable
    expected: dict


def fixture_examples() -> list[Fixture]:
    """The two printed pairs (relabeled to start at 0) with their facts."""
    a8, b8 = (_parse_block(t) for t in _FIX8)
    a9, b9 = (_parse_block(t) for t in _FIX9)
    return [
        Fixture("k=3n/4", a8, b8, {"dist": 16, "h": 2, "k": 6, "classes": ("C4xC2", "C8")}),
        Fixture("k=2n/3", a9, b9, {"dist": 27, "h": 3, "k": 3, "r": 0, "s": 0,
                                   "classes": ("C3^2", "C9")}),
    ]
