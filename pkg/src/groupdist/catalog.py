"""One representative per isomorphism class for orders 1..28.

For the orders that appear in the distance tables the ordering follows
the GAP small-group numbering. Order 24 is not printed anywhere we can
check, so it uses its own fixed ordering, documented in ``_order24``.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import UnsupportedOrder
from .groups import (
    CayleyTable,
    are_isomorphic,
    center,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    extend_action,
    generalized_dihedral,
    homomorphism_from_images,
    is_abelian,
    mul_power_automorphism,
    order_spectrum,
    semidirect_product,
)

MAX_ORDER = 28

# number of groups of each order, for cross-checks
GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2,
    23: 1, 24: 15, 25: 2, 26: 2, 27: 5, 28: 4,
}


def _prod(name, *factors):
    t = factors[0]
    for f in factors[1:]:
        t = direct_product(t, f)
    return t.renamed(name)


def _cyclic_sd(n, k, r, name):
    """``C_n ⋊ C_k`` with the generator acting as ``x -> r x``."""
    act = extend_action(cyclic(k), {1: mul_power_automorphism(n, r)}, n)
    return semidirect_product(cyclic(n), cyclic(k), act, name)


def _sd(normal, acting, gen_images, name):
    act = extend_action(acting, gen_images, normal.n)
    return semidirect_product(normal, acting, act, name)


def _c(n):
    return cyclic(n)


def _order16():
    c4xc2 = _prod("C4xC2", _c(4), _c(2))
    # C4xC2 elements (i, j) -> 2i + j; a = 2, b = 1
    r2 = [2 * i + ((i + j) % 2) for i in range(4) for j in range(2)]  # a -> ab
    r3 = [2 * ((i + 2 * j) % 4) + j for i in range(4) for j in range(2)]  # b -> a^2 b
    return [
        _c(16),
        _prod("C4xC4", _c(4), _c(4)),
        _sd(c4xc2, _c(2), {1: r2}, "(C4xC2):C2_r2"),
        _cyclic_sd(4, 4, 3, "C4:C4"),
        _prod("C8xC2", _c(8), _c(2)),
        _cyclic_sd(8, 2, 5, "C8:C2"),
        dihedral(8),
        _cyclic_sd(8, 2, 3, "QD16"),
        dicyclic(4).renamed("Q16"),
        _prod("C4xC2^2", _c(4), _c(2), _c(2)),
        _prod("C2xD8", _c(2), dihedral(4)),
        _prod("C2xQ8", _c(2), dicyclic(2)),
        _sd(c4xc2, _c(2), {1: r3}, "(C4xC2):C2_r3"),
        _prod("C2^4", _c(2), _c(2), _c(2), _c(2)),
    ]


def _klein():
    return _prod("C2^2", _c(2), _c(2))


def _a4():
    return _sd(_klein(), _c(3), {1: [0, 2, 3, 1]}, "A4")


def _order24():
    """Order 24 in the library's own fixed order (GAP-like, unchecked)."""
    q8 = dicyclic(2)
    # Q8: a^k x^e -> 2k + e; cycle i=a -> j=x -> k=ax
    rot = homomorphism_from_images(q8, q8, {1: 2 * 1 + 1, 2: 1})
    d8 = dihedral(4)
    inv3 = [0, 2, 1]
    klein_kernel = {0, 1, 4, 5}
    act_d8 = {s: (list(range(3)) if s in klein_kernel else inv3) for s in range(8)}
    s3 = dihedral(3)
    # S3 elements: rotation 2, reflection 1; faithful action on the Klein group
    s4 = _sd(_klein(), s3, {2: [0, 2, 3, 1], 1: [0, 2, 1, 3]}, "S4")
    return [
        _cyclic_sd(3, 8, 2, "C3:C8"),
        _c(24),
        _sd(q8, _c(3), {1: rot}, "SL(2,3)"),
        dicyclic(6).renamed("Dic6"),
        _prod("C4xS3", _c(4), dihedral(3)),
        dihedral(12),
        _prod("C2xDic3", _c(2), dicyclic(3)),
        semidirect_product(_c(3), d8, act_d8, "C3:D8"),
        _prod("C12xC2", _c(12), _c(2)),
        _prod("C3xD8", _c(3), d8),
        _prod("C3xQ8", _c(3), q8),
        s4,
        _prod("C2xA4", _c(2), _a4()),
        _prod("C2^2xS3", _c(2), _c(2), dihedral(3)),
        _prod("C6xC2^2", _c(6), _c(2), _c(2)),
    ]


def _build(n):
    c = _c
    if n in (1, 2, 3, 5, 7, 11, 13, 17, 19, 23):
        return [c(n)]
    if n == 4:
        return [c(4), _klein()]
    if n == 6:
        return [dihedral(3).renamed("S3"), c(6)]
    if n == 8:
        return [c(8), _prod("C4xC2", c(4), c(2)), dihedral(4), dicyclic(2),
                _prod("C2^3", c(2), c(2), c(2))]
    if n == 9:
        return [c(9), _prod("C3^2", c(3), c(3))]
    if n in (10, 14, 22, 26):
        return [dihedral(n // 2), c(n)]
    if n == 12:
        return [dicyclic(3), c(12), _a4(), dihedral(6), _prod("C6xC2", c(6), c(2))]
    if n == 15:
        return [c(15)]
    if n == 16:
        return _order16()
    if n == 18:
        c3sq = _prod("C3^2", c(3), c(3))
        return [dihedral(9), c(18), _prod("C3xS3", c(3), dihedral(3)),
                generalized_dihedral(c3sq, "C3^2:C2"), _prod("C6xC3", c(6), c(3))]
    if n == 20:
        return [dicyclic(5), c(20), _cyclic_sd(5, 4, 2, "C5:C4"), dihedral(10),
                _prod("C10xC2", c(10), c(2))]
    if n == 21:
        return [_cyclic_sd(7, 3, 2, "C7:C3"), c(21)]
    if n == 24:
        return _order24()
    if n == 25:
        return [c(25), _prod("C5^2", c(5), c(5))]
    if n == 27:
        c3sq = _prod("C3^2", c(3), c(3))
        heis = [3 * ((i + j) % 3) + j for i in range(3) for j in range(3)]
        return [c(27), _prod("C9xC3", c(9), c(3)), _sd(c3sq, c(3), {1: heis}, "He3"),
                _cyclic_sd(9, 3, 4, "C9:C3"), _prod("C3^3", c(3), c(3), c(3))]
    if n == 28:
        return [dicyclic(7), c(28), dihedral(14), _prod("C14xC2", c(14), c(2))]
    raise UnsupportedOrder(f"no catalog for order {n}")


@lru_cache(maxsize=None)
def _catalog(n):
    return tuple((t.name, t) for t in _build(n))


def catalog(n: int) -> list[tuple[str, CayleyTable]]:
    """Ordered ``(name, table)`` pairs, one per isomorphism class."""
    if not isinstance(n, int) or not 1 <= n <= MAX_ORDER:
        raise UnsupportedOrder(f"catalog covers orders 1..{MAX_ORDER}, got {n}")
    return list(_catalog(n))


def catalog_table(n: int, index: int) -> CayleyTable:
    """The ``index``-th group of order ``n`` (1-based, as in the tables)."""
    cat = catalog(n)
    if not 1 <= index <= len(cat):
        raise UnsupportedOrder(f"order {n} has {len(cat)} groups, not {index}")
    return cat[index - 1][1]


def by_name(name: str) -> CayleyTable:
    for n in range(1, MAX_ORDER + 1):
        for nm, t in _catalog(n):
            if nm == name:
                return t
    raise KeyError(name)


def _invariants(t):
    return (tuple(order_spectrum(t).items()), is_abelian(t), len(center(t)))


@lru_cache(maxsize=None)
def _catalog_invariants(n):
    return [(name, t, _invariants(t)) for name, t in _catalog(n)]


def identify(t: CayleyTable) -> tuple[int, str]:
    """Return ``(index, name)`` of the catalog class containing ``t``."""
    inv = _invariants(t)
    cands = [(i, name, c) for i, (name, c, ci) in enumerate(_catalog_invariants(t.n), 1) if ci == inv]
    if len(cands) == 1:
        return cands[0][0], cands[0][1]
    for i, name, c in cands:
        if are_isomorphic(c, t):
            return i, name
    raise ValueError("table is not isomorphic to any catalog group")


def identify_name(t: CayleyTable) -> str:
    return identify(t)[1]


__all__ = ["catalog", "catalog_table", "identify", "identify_name", "by_name", "GROUP_COUNTS", "MAX_ORDER"]
