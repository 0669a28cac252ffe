"""Finite groups as Cayley tables on the element set ``0..n-1``.

Element 0 is always the identity. Tables are stored as read-only numpy
integer arrays so they can be shared freely between threads and
processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    InvalidSpec,
    MapNotBijective,
    MapNotTotal,
)

UNDEFINED = -1


def _frozen(arr):
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CayleyTable:
    """Operation table of a group of order ``n``.

    ``table[a, b]`` is the product of ``a`` and ``b``. Validity is not
    enforced on construction; see :func:`verify_group`.
    """

    table: np.ndarray
    name: str | None = None
    n: int = field(init=False)

    def __post_init__(self):
        t = _frozen(self.table)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ValueError(f"expected a non-empty square table, got shape {t.shape}")
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "n", t.shape[0])

    def __eq__(self, other):
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<CayleyTable{label} n={self.n}>"

    def mul(self, a, b):
        return int(self.table[a, b])

    def renamed(self, name):
        return CayleyTable(self.table, name)

    def tolist(self):
        return self.table.tolist()


@dataclass(frozen=True, eq=False)
class ElementMap:
    """A partial injective map on ``0..n-1``; ``UNDEFINED`` marks holes."""

    image: np.ndarray
    inverse_image: np.ndarray = field(default=None)

    def __post_init__(self):
        img = np.asarray(self.image, dtype=np.int64).copy()
        n = img.shape[0]
        inv = np.full(n, UNDEFINED, dtype=np.int64)
        for x, y in enumerate(img):
            if y == UNDEFINED:
                continue
            if not 0 <= y < n:
                raise ValueError(f"image {y} out of range")
            if inv[y] != UNDEFINED:
                raise MapNotBijective(f"{inv[y]} and {x} both map to {y}")
            inv[y] = x
        object.__setattr__(self, "image", _frozen(img))
        object.__setattr__(self, "inverse_image", _frozen(inv))

    @property
    def n(self):
        return self.image.shape[0]

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n))

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build a permutation of ``0..n-1`` from disjoint cycles."""
        img = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                img[x] = cyc[(i + 1) % len(cyc)]
        return cls(np.array(img))

    def is_total(self):
        return bool((self.image != UNDEFINED).all())

    def __call__(self, x):
        return int(self.image[x])

    def inverse(self):
        if not self.is_total():
            raise MapNotTotal("cannot invert a partial map")
        return ElementMap(self.inverse_image)

    def compose(self, other):
        """Return ``self ∘ other`` (apply ``other`` first)."""
        if not (self.is_total() and other.is_total()):
            raise MapNotTotal("composition needs total maps")
        return ElementMap(self.image[other.image])

    def __eq__(self, other):
        if not isinstance(other, ElementMap):
            return NotImplemented
        return np.array_equal(self.image, other.image)

    def __hash__(self):
        return hash(self.image.tobytes())

    def tolist(self):
        return self.image.tolist()

    def __repr__(self):
        return f"ElementMap({self.image.tolist()})"


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str  # latin-row | latin-column | identity | associativity
    witness: tuple

    def __str__(self):
        return f"{self.kind} {self.witness}"


def _dup_witness(seq):
    seen = {}
    for i, v in enumerate(seq):
        v = int(v)
        if v in seen:
            return seen[v], i
        seen[v] = i
    missing = sorted(set(range(len(seq))) - set(int(v) for v in seq))
    return (missing[0],) if missing else ()


def verify_group(t: CayleyTable) -> list[Violation]:
    """Return every violated group axiom, each with a witness.

    Latin violations are reported once per offending row/column as
    ``(line, i, j)`` where positions ``i`` and ``j`` repeat a value.
    Identity violations are reported per element. Associativity is
    reported once with the first failing triple ``(a, b, c)``.
    """
    n, T = t.n, t.table
    if T.min() < 0 or T.max() >= n:
        raise ValueError("table entries out of range")
    out = []
    full = np.arange(n)
    for a in range(n):
        if not np.array_equal(np.sort(T[a]), full):
            out.append(Violation("latin-row", (a,) + _dup_witness(T[a])))
    for b in range(n):
        if not np.array_equal(np.sort(T[:, b]), full):
            out.append(Violation("latin-column", (b,) + _dup_witness(T[:, b])))
    for x in range(n):
        if T[0, x] != x or T[x, 0] != x:
            out.append(Violation("identity", (x,)))
    left = T[T]  # left[a, b, c] = (ab)c
    right = T[full[:, None, None], T[None, :, :]]  # a(bc)
    bad = np.argwhere(left != right)
    if len(bad):
        out.append(Violation("associativity", tuple(int(v) for v in bad[0])))
    return out


def is_group(t: CayleyTable) -> bool:
    return not verify_group(t)


# ---------------------------------------------------------------------------
# element arithmetic


def inverses(t: CayleyTable) -> np.ndarray:
    inv = np.argmax(t.table == 0, axis=1)
    return inv


def power(t: CayleyTable, x: int, k: int) -> int:
    r = 0
    for _ in range(k % element_order(t, x) if k < 0 else k):
        r = t.mul(r, x)
    return r


def element_order(t: CayleyTable, a: int) -> int:
    k, x = 1, a
    while x != 0:
        x = t.mul(x, a)
        k += 1
        if k > t.n:
            raise ValueError(f"element {a} has no finite order in this table")
    return k


def element_orders(t: CayleyTable) -> np.ndarray:
    return np.array([element_order(t, a) for a in range(t.n)], dtype=np.int64)


def order_spectrum(t: CayleyTable) -> dict[int, int]:
    """Map each element order to the number of elements having it."""
    spec: dict[int, int] = {}
    for o in element_orders(t):
        spec[int(o)] = spec.get(int(o), 0) + 1
    return dict(sorted(spec.items()))


def subgroup_generated(t: CayleyTable, gens: Iterable[int]) -> tuple[int, ...]:
    gens = [int(g) for g in gens]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def is_subgroup(t: CayleyTable, elems: Iterable[int]) -> bool:
    s = set(int(e) for e in elems)
    if 0 not in s:
        return False
    return all(t.mul(a, b) in s for a in s for b in s)


def is_normal(t: CayleyTable, elems: Iterable[int]) -> bool:
    s = set(int(e) for e in elems)
    if not is_subgroup(t, s):
        return False
    inv = inverses(t)
    return all(t.mul(t.mul(g, x), int(inv[g])) in s for g in range(t.n) for x in s)


def center(t: CayleyTable) -> tuple[int, ...]:
    T = t.table
    return tuple(int(z) for z in range(t.n) if np.array_equal(T[z], T[:, z]))


def is_abelian(t: CayleyTable) -> bool:
    return bool(np.array_equal(t.table, t.table.T))


def is_cyclic(t: CayleyTable) -> bool:
    return any(element_order(t, a) == t.n for a in range(t.n))


def right_cosets(t: CayleyTable, sub: Sequence[int]) -> list[tuple[int, ...]]:
    """Right cosets ``H b`` ordered by their least element."""
    seen = set()
    out = []
    for b in range(t.n):
        if b in seen:
            continue
        coset = tuple(t.mul(h, b) for h in sub)
        seen.update(coset)
        out.append(coset)
    return out


def all_subgroups(t: CayleyTable) -> list[tuple[int, ...]]:
    """Every subgroup, found by closing under single generators repeatedly."""
    subs = {(0,)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for s in frontier:
            sset = set(s)
            for g in range(t.n):
                if g in sset:
                    continue
                new = subgroup_generated(t, s + (g,))
                if new not in subs:
                    subs.add(new)
                    nxt.append(new)
        frontier = nxt
    return sorted(subs, key=lambda s: (len(s), s))


def normal_subgroups(t: CayleyTable) -> list[tuple[int, ...]]:
    return [s for s in all_subgroups(t) if is_normal(t, s)]


# ---------------------------------------------------------------------------
# isomorphisms and automorphisms


def _close_hom(a, b, f, finv, gens, queue):
    """Propagate ``f`` over the subgroup generated by ``gens``.

    Returns False on a conflict (non-homomorphism or non-injective).
    """
    A, B = a.table, b.table
    while queue:
        u = queue.pop()
        fu = f[u]
        for g in gens:
            v = A[u, g]
            w = B[fu, f[g]]
            fv = f[v]
            if fv == UNDEFINED:
                if finv[w] != UNDEFINED:
                    return False
                f[v] = w
                finv[w] = v
                queue.append(v)
            elif fv != w:
                return False
    return True


def _hom_search(a: CayleyTable, b: CayleyTable, first_only: bool):
    """Depth-first enumeration of isomorphisms ``a -> b``.

    Branches on the least unmapped element, which is always a new
    generator, so images come out in lexicographic order of the full
    image sequence.
    """
    n = a.n
    oa, ob = element_orders(a), element_orders(b)
    by_order: dict[int, list[int]] = {}
    for y in range(n):
        by_order.setdefault(int(ob[y]), []).append(y)
    results = []

    f0 = [UNDEFINED] * n
    finv0 = [UNDEFINED] * n
    f0[0] = finv0[0] = 0

    def rec(f, finv, gens):
        try:
            x = f.index(UNDEFINED)
        except ValueError:
            results.append(tuple(f))
            return first_only
        for y in by_order.get(int(oa[x]), ()):
            if finv[y] != UNDEFINED:
                continue
            g2 = f[:]
            ginv2 = finv[:]
            g2[x] = y
            ginv2[y] = x
            gens2 = gens + [x]
            queue = [u for u in range(n) if g2[u] != UNDEFINED]
            if _close_hom(a, b, g2, ginv2, gens2, queue):
                if rec(g2, ginv2, gens2):
                    return True
        return False

    rec(f0, finv0, [])
    return results


def find_isomorphism(a: CayleyTable, b: CayleyTable) -> ElementMap | None:
    """Lexicographically least isomorphism ``a -> b``, or None."""
    if a.n != b.n or order_spectrum(a) != order_spectrum(b):
        return None
    if is_abelian(a) != is_abelian(b):
        return None
    found = _hom_search(a, b, first_only=True)
    return ElementMap(np.array(found[0])) if found else None


def are_isomorphic(a: CayleyTable, b: CayleyTable) -> bool:
    return find_isomorphism(a, b) is not None


def generating_sequence(t: CayleyTable) -> list[int]:
    """Greedy generators: repeatedly add the least element not yet generated."""
    gens: list[int] = []
    sub = {0}
    while len(sub) < t.n:
        x = min(set(range(t.n)) - sub)
        gens.append(x)
        sub = set(subgroup_generated(t, gens))
    return gens


def automorphisms(t: CayleyTable) -> list[tuple[int, ...]]:
    """All automorphisms, as image tuples in lexicographic order."""
    return _hom_search(t, t, first_only=False)


def automorphism_array(t: CayleyTable) -> np.ndarray:
    return np.array(automorphisms(t), dtype=np.int64).reshape(-1, t.n)


def prime_order_subgroups(t: CayleyTable) -> list[tuple[int, ...]]:
    """Cyclic subgroups of prime order, largest first."""
    subs = set()
    for x in range(1, t.n):
        o = element_order(t, x)
        if _is_prime(o):
            subs.add(subgroup_generated(t, [x]))
    return sorted(subs, key=lambda s: (-len(s), s))


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def apply_bijection(t: CayleyTable, f) -> CayleyTable:
    """Transport the operation along ``f``: ``f(x) * f(y) = f(x . y)``."""
    if not isinstance(f, ElementMap):
        f = ElementMap(np.asarray(f))
    if f.n != t.n:
        raise ValueError("map and table sizes differ")
    if not f.is_total():
        raise MapNotTotal("bijection must be total")
    img = f.image
    out = np.empty_like(t.table)
    out[np.ix_(img, img)] = img[t.table]
    return CayleyTable(out, t.name)


def distance(a: CayleyTable, b: CayleyTable) -> int:
    return int((a.table != b.table).sum())


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int) -> CayleyTable:
    if n < 1:
        raise InvalidSpec("cyclic order must be positive")
    i = np.arange(n)
    return CayleyTable((i[:, None] + i[None, :]) % n, f"C{n}")


def direct_product(a: CayleyTable, b: CayleyTable, name=None) -> CayleyTable:
    """Direct product with pairing ``(x, y) -> x*|b| + y``."""
    nb = b.n
    A, B = a.table, b.table
    T = A[:, None, :, None] * nb + B[None, :, None, :]
    T = T.reshape(a.n * nb, a.n * nb)
    if name is None and a.name and b.name:
        name = f"{a.name}x{b.name}"
    return CayleyTable(T, name)


def is_automorphism(t: CayleyTable, perm) -> bool:
    p = np.asarray(perm)
    if sorted(p.tolist()) != list(range(t.n)):
        return False
    return bool(np.array_equal(p[t.table], t.table[np.ix_(p, p)]))


def semidirect_product(normal: CayleyTable, acting: CayleyTable, action, name=None) -> CayleyTable:
    """Semidirect product ``normal ⋊ acting``.

    ``action`` maps every element of ``acting`` to an automorphism of
    ``normal`` given as an image sequence; a dict or a list indexed by
    element both work. Elements are paired as ``(x, s) -> x*|acting| + s``
    and ``(x1, s1)(x2, s2) = (x1 . s1(x2), s1 s2)``.
    """
    nn, na = normal.n, acting.n
    if isinstance(action, Mapping):
        missing = set(range(na)) - set(action)
        if missing:
            raise ActionNotHomomorphism(f"action undefined on {sorted(missing)}")
        phi = np.array([action[s] for s in range(na)], dtype=np.int64)
    else:
        phi = np.asarray(action, dtype=np.int64)
    if phi.shape != (na, nn):
        raise ActionNotHomomorphism(f"action must give {na} permutations of size {nn}")
    for s in range(na):
        if not is_automorphism(normal, phi[s]):
            raise ActionNotAutomorphism(f"image of {s} is not an automorphism")
    for s1 in range(na):
        for s2 in range(na):
            if not np.array_equal(phi[acting.mul(s1, s2)], phi[s1][phi[s2]]):
                raise ActionNotHomomorphism(f"action fails on ({s1}, {s2})")
    N, S = normal.table, acting.table
    x1 = np.arange(nn)[:, None, None, None]
    s1 = np.arange(na)[None, :, None, None]
    x2 = np.arange(nn)[None, None, :, None]
    s2 = np.arange(na)[None, None, None, :]
    xs = N[x1, phi[s1, x2]]
    ss = S[s1, s2]
    T = (xs * na + ss).reshape(nn * na, nn * na)
    return CayleyTable(T, name)


def extend_action(acting: CayleyTable, gen_images: Mapping[int, Sequence[int]], nn: int):
    """Extend generator images to a full action ``acting -> Sym(nn)``.

    Raises ActionNotHomomorphism when the images are inconsistent.
    """
    gens = sorted(gen_images)
    act = {0: tuple(range(nn))}
    frontier = [0]
    imgs = {g: np.asarray(gen_images[g], dtype=np.int64) for g in gens}
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = acting.mul(s, g)
                val = tuple(np.asarray(act[s])[imgs[g]].tolist())
                if t not in act:
                    act[t] = val
                    nxt.append(t)
                elif act[t] != val:
                    raise ActionNotHomomorphism(f"inconsistent action at {t}")
        frontier = nxt
    if len(act) != acting.n:
        raise ActionNotHomomorphism("generator images do not generate the acting group")
    return act


def dihedral(k: int) -> CayleyTable:
    """Dihedral group of order ``2k`` as ``C_k ⋊ C_2`` with inversion."""
    ck = cyclic(k)
    inv = [(-x) % k for x in range(k)]
    return semidirect_product(ck, cyclic(2), [list(range(k)), inv], f"D{2 * k}")


def dicyclic(m: int) -> CayleyTable:
    """Dicyclic group of order ``4m``; elements ``a^i x^e`` paired as ``2i + e``."""
    if m < 1:
        raise InvalidSpec("dicyclic parameter must be positive")
    n2 = 2 * m
    T = np.empty((4 * m, 4 * m), dtype=np.int64)
    for i, e, j, f in product(range(n2), range(2), range(n2), range(2)):
        if e == 0:
            k, g = (i + j) % n2, f
        elif f == 0:
            k, g = (i - j) % n2, 1
        else:
            k, g = (i - j + m) % n2, 0
        T[2 * i + e, 2 * j + f] = 2 * k + g
    return CayleyTable(T, f"Dic{m}" if m != 2 else "Q8")


def generalized_dihedral(base: CayleyTable, name=None) -> CayleyTable:
    """``D(O)`` on ``O x C2``: ``(a,1)(b,h) = (a b^-1, 1+h)``.

    The base must be abelian of odd order.
    """
    if not is_abelian(base):
        raise InvalidSpec("generalized dihedral base must be abelian")
    if base.n % 2 == 0:
        raise InvalidSpec("generalized dihedral base must have odd order")
    return inversion_extension(base, name or (f"D({base.name})" if base.name else None))


def inversion_extension(base: CayleyTable, name=None) -> CayleyTable:
    """``base ⋊ C2`` with the generator acting by inversion (base abelian)."""
    if not is_abelian(base):
        raise InvalidSpec("inversion is an automorphism only of abelian groups")
    inv = inverses(base).tolist()
    return semidirect_product(base, cyclic(2), [list(range(base.n)), inv], name)


@dataclass(frozen=True)
class GroupSpec:
    """Recipe for a named group.

    kind is one of Cyclic, Dihedral, Dicyclic, GeneralizedDihedral,
    DirectProduct, SemidirectProduct. ``params`` by kind:

    - Cyclic: ``(n,)``
    - Dihedral: ``(k,)`` for order ``2k``
    - Dicyclic: ``(m,)`` for order ``4m``
    - GeneralizedDihedral: ``(base_spec,)``
    - DirectProduct: ``(spec, spec, ...)``
    - SemidirectProduct: ``(normal_spec, acting_spec, action)`` where
      action is one automorphism of the normal factor (the image of
      element 1 of a cyclic acting group) or a dict of generator images.
    """

    kind: str
    params: tuple = ()
    name: str | None = None


def _as_table(x) -> CayleyTable:
    return x if isinstance(x, CayleyTable) else build_named(x)


def build_named(spec: GroupSpec) -> CayleyTable:
    kind, p = spec.kind, spec.params
    try:
        if kind == "Cyclic":
            (n,) = p
            if n < 1:
                raise InvalidSpec("order must be positive")
            t = cyclic(n)
        elif kind == "Dihedral":
            (k,) = p
            if k < 1:
                raise InvalidSpec("dihedral parameter must be positive")
            t = dihedral(k)
        elif kind == "Dicyclic":
            (m,) = p
            t = dicyclic(m)
        elif kind == "GeneralizedDihedral":
            (base,) = p
            t = generalized_dihedral(_as_table(base))
        elif kind == "DirectProduct":
            if not p:
                raise InvalidSpec("direct product needs factors")
            t = _as_table(p[0])
            for q in p[1:]:
                t = direct_product(t, _as_table(q))
        elif kind == "SemidirectProduct":
            normal, acting, action = p
            N, S = _as_table(normal), _as_table(acting)
            if isinstance(action, Mapping):
                full = extend_action(S, action, N.n)
            else:
                phi = np.asarray(action, dtype=np.int64)
                if not is_cyclic(S) or element_order(S, 1) != S.n:
                    raise InvalidSpec("single-automorphism actions need a cyclic acting group generated by 1")
                full = extend_action(S, {1: phi}, N.n)
            t = semidirect_product(N, S, full)
        else:
            raise InvalidSpec(f"unknown group kind {kind!r}")
    except (TypeError, ValueError) as exc:
        raise InvalidSpec(str(exc)) from exc
    if spec.name:
        t = t.renamed(spec.name)
    return t


def mul_power_automorphism(n: int, r: int) -> list[int]:
    """The automorphism ``x -> r x`` of ``C_n`` (requires gcd(r, n) = 1)."""
    if gcd(r, n) != 1:
        raise InvalidSpec(f"{r} is not a unit mod {n}")
    return [(r * x) % n for x in range(n)]


def homomorphism_from_images(a: CayleyTable, b: CayleyTable, images: Mapping[int, int]) -> list[int]:
    """Extend generator images to a homomorphism defined on all of ``a``.

    The generators must generate ``a`` and the induced map must be
    injective; raises InvalidSpec otherwise.
    """
    f = [UNDEFINED] * a.n
    finv = [UNDEFINED] * b.n
    f[0] = finv[0] = 0
    gens = []
    for x, y in sorted(images.items()):
        if f[x] != UNDEFINED:
            if f[x] != y:
                raise InvalidSpec(f"generator images conflict at {x}")
            continue
        if finv[y] != UNDEFINED:
            raise InvalidSpec("generator images are not injective")
        f[x], finv[y] = y, x
        gens.append(x)
        queue = [u for u in range(a.n) if f[u] != UNDEFINED]
        if not _close_hom(a, b, f, finv, gens, queue):
            raise InvalidSpec("generator images do not define an injective homomorphism")
    if UNDEFINED in f:
        raise InvalidSpec("generator images do not generate the group")
    return f
