"""Distance statistics between two operations on the same element set."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from .errors import SizeMismatch, UnsupportedOrder
from .groups import (
    CayleyTable,
    element_order,
    element_orders,
    is_subgroup,
)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check(a: CayleyTable, b: CayleyTable):
    if a.n != b.n:
        raise SizeMismatch(f"orders differ: {a.n} vs {b.n}")


def diff_mask(a: CayleyTable, b: CayleyTable) -> np.ndarray:
    _check(a, b)
    return a.table != b.table


def diff_set(a: CayleyTable, b: CayleyTable) -> list[tuple[int, int]]:
    return [(int(x), int(y)) for x, y in np.argwhere(diff_mask(a, b))]


def dist(a: CayleyTable, b: CayleyTable) -> int:
    return int(diff_mask(a, b).sum())


def row_dist(a: CayleyTable, b: CayleyTable) -> np.ndarray:
    return diff_mask(a, b).sum(axis=1)


@dataclass(frozen=True)
class DistanceProfile:
    n: int
    dist: int
    row_dist: tuple[int, ...]
    H: tuple[int, ...]
    K: tuple[int, ...]
    h: int
    k: int
    m: int | None
    q: int
    m_prime: int | None = None
    omega: int | None = None

    def to_json(self):
        d = asdict(self)
        return {
            "n": d["n"], "dist": d["dist"], "rowDist": list(d["row_dist"]),
            "H": list(d["H"]), "K": list(d["K"]), "h": d["h"], "k": d["k"],
            "m": d["m"], "mPrime": d["m_prime"], "omega": d["omega"],
        }


def omega(a: CayleyTable, b: CayleyTable) -> int:
    """``min(o_n(a), o_{n/2}(b)) + min(o_{n/2}(a), o_n(b))`` for even n."""
    n = a.n
    oa, ob = element_orders(a), element_orders(b)
    cnt = lambda o, l: int((o == l).sum())
    return min(cnt(oa, n), cnt(ob, n // 2)) + min(cnt(oa, n // 2), cnt(ob, n))


def profile(a: CayleyTable, b: CayleyTable) -> DistanceProfile:
    _check(a, b)
    n = a.n
    rd = row_dist(a, b)
    H = tuple(int(x) for x in np.flatnonzero(rd == 0))
    K = tuple(int(x) for x in np.flatnonzero(3 * rd < n))
    pos = rd[rd > 0]
    m = int(pos.min()) if len(pos) else None
    m_prime = None
    orders = element_orders(a)
    gens = np.flatnonzero(orders == n)
    if len(gens):
        m_prime = int(rd[gens].min())
    om = omega(a, b) if n % 2 == 0 else None
    return DistanceProfile(
        n=n, dist=int(rd.sum()), row_dist=tuple(int(x) for x in rd),
        H=H, K=K, h=len(H), k=len(K), m=m, q=ceil_div(n, 3),
        m_prime=m_prime, omega=om,
    )


# ---------------------------------------------------------------------------
# rows as permutations


def left_translation(t: CayleyTable, a: int) -> np.ndarray:
    return t.table[a].copy()


def beta_permutation(a: CayleyTable, b: CayleyTable, row: int) -> np.ndarray:
    """``L_row(a)^-1 L_row(b)``, composed right to left.

    ``x`` is moved exactly when the two tables disagree at ``(row, x)``.
    """
    _check(a, b)
    la_inv = np.argsort(a.table[row])
    return la_inv[b.table[row]]


def permutation_parity(p) -> int:
    """0 for even, 1 for odd."""
    p = list(p)
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def moved_points(p) -> int:
    p = np.asarray(p)
    return int((p != np.arange(len(p))).sum())


# ---------------------------------------------------------------------------
# R, S, T, U


@dataclass(frozen=True)
class RstuSets:
    R: frozenset
    S: frozenset
    T: frozenset
    U: frozenset
    U_prime: frozenset = field(default=frozenset())
    valid: bool = True  # False when m < 3 and the U contract is vacuous

    @property
    def r(self):
        return len(self.R)

    @property
    def s(self):
        return len(self.S)

    @property
    def t(self):
        return len(self.T)

    @property
    def u(self):
        return len(self.U)


def rstu(a: CayleyTable, b: CayleyTable) -> RstuSets:
    """Split the light-row differences into R, S, T and a minimal U.

    For each row of K outside H, U takes just enough cells of U' (in
    ascending column order) to make the row contribute three cells.
    """
    prof = profile(a, b)
    Kset = set(prof.K)
    Hset = set(prof.H)
    A = a.table
    mask = diff_mask(a, b)
    R, S, T, Up, U = set(), set(), set(), set(), set()
    for x in prof.K:
        row_cells = 0
        row_up = []
        for y in np.flatnonzero(mask[x]):
            y = int(y)
            xy = int(A[x, y])
            if x == y:
                R.add((x, y))
                row_cells += 1
            elif y in Kset:
                S.add((x, y))
                row_cells += 1
            elif xy in Kset:
                T.add((x, y))
                row_cells += 1
            else:
                Up.add((x, y))
                row_up.append((x, y))
        if x not in Hset:
            need = max(0, 3 - row_cells)
            U.update(row_up[:need])
    valid = prof.m is None or prof.m >= 3
    if not valid:
        U = set()
    return RstuSets(frozenset(R), frozenset(S), frozenset(T), frozenset(U), frozenset(Up), valid)


# ---------------------------------------------------------------------------
# thresholds


def delta0_n(n: int) -> int:
    """Order-only threshold used when the isomorphism type is unknown."""
    if n % 2:
        return 6 * n - 18
    if n % 4 == 2:
        return 6 * n - 20
    return 6 * n - 24


def is_generalized_dihedral(t: CayleyTable) -> bool:
    """True if ``t`` is D(O) for a nontrivial odd-order abelian O."""
    n = t.n
    if n % 4 != 2 or n < 6:
        return False
    orders = element_orders(t)
    odd = [int(x) for x in np.flatnonzero(orders % 2 == 1)]
    if len(odd) != n // 2 or not is_subgroup(t, odd):
        return False
    sub = t.table[np.ix_(odd, odd)]
    if not np.array_equal(sub, sub.T):
        return False
    return bool((orders[orders % 2 == 0] == 2).all())


def delta0(t: CayleyTable) -> int:
    n = t.n
    if n < 5:
        raise UnsupportedOrder("the transposition threshold needs n >= 5")
    if n % 2:
        return 6 * n - 18
    if is_generalized_dihedral(t):
        return 6 * n - 20
    return 6 * n - 24


def order_mismatch_bound(a: CayleyTable, b: CayleyTable, row: int) -> int:
    """Lower bound on a nonzero ``dist_row`` from the element orders.

    With orders ``sigma > tau`` the bound is ``(n/sigma) * ceil(sigma/tau)``;
    matched orders give 3 (a differing row moves at least 3 points then).
    """
    _check(a, b)
    s, t = element_order(a, row), element_order(b, row)
    if s == t:
        return 3
    return mismatch_value(a.n, s, t)


def mismatch_value(n: int, s: int, t: int) -> int:
    """``(n/σ)⌈σ/τ⌉`` with σ the larger and τ the smaller order."""
    if s == t:
        return 0
    sigma, tau = max(s, t), min(s, t)
    return (n // sigma) * ceil_div(sigma, tau)


def triple_ok(prof: DistanceProfile, a: CayleyTable, b: CayleyTable) -> bool:
    """Check ``dist_x + dist_y + dist_{x.y} >= n`` on every difference."""
    rd = np.asarray(prof.row_dist)
    A = a.table
    for x, y in diff_set(a, b):
        if rd[x] + rd[y] + rd[A[x, y]] < prof.n:
            return False
    return True


def right_cosets_constant(prof: DistanceProfile, t: CayleyTable) -> bool:
    rd = prof.row_dist
    for x in range(prof.n):
        vals = {rd[t.mul(hh, x)] for hh in prof.H}
        if len(vals) > 1:
            return False
    return True


__all__ = [
    "DistanceProfile", "RstuSets", "profile", "beta_permutation", "rstu", "delta0",
    "delta0_n", "order_mismatch_bound", "mismatch_value", "dist", "diff_set", "row_dist",
    "omega", "is_generalized_dihedral", "permutation_parity", "moved_points", "ceil_div",
]
