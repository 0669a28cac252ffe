import random

import pytest
from hypothesis import given, settings, strategies as st

from groupdist.errors import TooLarge
from groupdist.io import MuCache
from groupdist.metrics import profile
from groupdist.rainbow import (
    ColoredGraph, build_gamma_u, canonical_form, compute_mu, elementary_lower_bound,
    has_rainbow_matching, is_restricted, mu,
)

from strategies import near_pair, odd_swap_isomorph

K4 = ColoredGraph(4, [(0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)])


def test_k4_perfect_matchings():
    assert is_restricted(K4) and K4.is_simple() and len(K4) == 6
    assert has_rainbow_matching(K4, 2) == (False, None)
    ok, w = has_rainbow_matching(K4, 1)
    assert ok and len(w) == 1


def test_restricted_limits():
    star = ColoredGraph(4, [(0, 1, 0), (0, 2, 0), (0, 3, 0)])
    assert not is_restricted(star)
    four = ColoredGraph(8, [(0, 1, 0), (2, 3, 0), (4, 5, 0), (6, 7, 0)])
    assert not is_restricted(four)
    path = ColoredGraph(4, [(0, 1, 0), (1, 2, 0), (2, 3, 0)])
    assert is_restricted(path)
    with pytest.raises(ValueError):
        has_rainbow_matching(path, 0)


@pytest.mark.parametrize("v", range(2, 9))
def test_mu2_small(v, tmp_path):
    res = compute_mu(2, v)
    expect = {2: 2, 3: 4}.get(v, 7 if v <= 6 else v)
    assert res.value == expect
    assert is_restricted(res.witness)
    assert not has_rainbow_matching(res.witness, 2)[0]
    assert len(res.witness) == expect - 1


@pytest.mark.parametrize("v", range(2, 11))
def test_mu1(v):
    assert compute_mu(1, v).value == 1


def test_mu_cache_round_trip(tmp_path):
    cache = MuCache(tmp_path, seed=False)
    assert mu(2, 5, cache=cache) == 7
    assert MuCache(tmp_path, seed=False).get(2, 5) == 7
    seeded = MuCache(tmp_path / "other")
    assert seeded.get(3, 10) == 18
    assert mu(3, 10, cache=seeded) == 18


def test_limits():
    with pytest.raises(TooLarge):
        compute_mu(4, 6)
    with pytest.raises(TooLarge):
        compute_mu(2, 11)
    with pytest.raises(TooLarge):
        canonical_form(ColoredGraph(13, []))


def test_elementary_lower_bound():
    for v in range(4, 9):
        assert elementary_lower_bound(2, v) <= compute_mu(2, v).value
    assert elementary_lower_bound(3, 6) == 10


@st.composite
def restricted_graph(draw):
    v = draw(st.integers(3, 9))
    pairs = [(x, y) for x in range(v) for y in range(x + 1, v)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(12, len(pairs))))
    colors = draw(st.lists(st.integers(0, 5), min_size=len(chosen), max_size=len(chosen)))
    return ColoredGraph(v, [(x, y, c) for (x, y), c in zip(chosen, colors)])


@settings(max_examples=200)
@given(restricted_graph(), st.randoms(use_true_random=False))
def test_canonical_form_invariance(g, rnd):
    perm = list(range(g.v))
    rnd.shuffle(perm)
    cols = sorted({c for *_, c in g.edges})
    ren = dict(zip(cols, rnd.sample(range(10, 10 + len(cols)), len(cols))))
    h = ColoredGraph(g.v, [(perm[x], perm[y], ren[c]) for x, y, c in g.edges])
    assert canonical_form(g) == canonical_form(h)
    for ell in (1, 2, 3):
        assert has_rainbow_matching(g, ell)[0] == has_rainbow_matching(h, ell)[0]


def test_canonical_form_separates():
    a = ColoredGraph(4, [(0, 1, 0), (2, 3, 0)])
    b = ColoredGraph(4, [(0, 1, 0), (1, 2, 0)])
    c = ColoredGraph(4, [(0, 1, 0), (2, 3, 1)])
    assert len({canonical_form(a), canonical_form(b), canonical_form(c)}) == 3


@settings(max_examples=250)
@given(st.one_of(near_pair(), odd_swap_isomorph()))
def test_gamma_u_restricted(pair):
    a, b = pair
    prof = profile(a, b)
    if prof.m is None or prof.m < 3 or prof.k == prof.h:
        return
    gu = build_gamma_u(a, b)
    assert is_restricted(gu.graph)
    assert gu.graph.v == prof.n - prof.k
    # at most a double edge between two vertices before suppression
    assert gu.multi_edges <= 2 * len(gu.graph)
    # a rainbow l-matching buys a profit of l(n - 2q - m)
    base = (prof.k - prof.h) * prof.m + (prof.n - prof.k) * prof.q
    for ell in (3, 2, 1):
        if has_rainbow_matching(gu.graph, ell)[0]:
            assert prof.dist - base >= ell * (prof.n - 2 * prof.q - prof.m)
            break


def test_mu3_witness_graphs():
    res = compute_mu(3, 7)
    g = res.witness
    assert res.value == 15 and g.v == 7 and len(g) == 14
    assert is_restricted(g) and not has_rainbow_matching(g, 3)[0]
    deg = {x: 0 for x in range(7)}
    for x, y, _ in g.edges:
        deg[x] += 1
        deg[y] += 1
    # deleting a vertex of degree 2 leaves an extremal graph on 6 vertices
    low = [x for x, d in deg.items() if d == 2]
    if low:
        z = low[0]
        keep = [x for x in range(7) if x != z]
        idx = {x: i for i, x in enumerate(keep)}
        h = ColoredGraph(6, [(idx[x], idx[y], c) for x, y, c in g.edges if z not in (x, y)])
        assert len(h) == 12 and not has_rainbow_matching(h, 3)[0]
        assert len(h) + 1 == compute_mu(3, 6).value
