import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from groupdist import _kernels
from groupdist.catalog import by_name, catalog
from groupdist.errors import SizeMismatch
from groupdist.groups import apply_bijection, cyclic, element_orders
from groupdist.io import DistCache
from groupdist.metrics import dist, mismatch_value
from groupdist.search import (
    SearchConfig, _brute_force, class_distance, delta_iso_cyclic, left_division,
    neighbor_matrix, transposition_min,
)

from strategies import fixing_zero

SMALL = [(n, i, j) for n in range(2, 7) for i in range(len(catalog(n))) for j in range(len(catalog(n)))]


@pytest.mark.parametrize("n,i,j", SMALL)
def test_brute_force_oracle(n, i, j):
    a, b = catalog(n)[i][1], catalog(n)[j][1]
    got = class_distance(a, b)
    ref = _brute_force(a, b)
    assert got.distance == ref.distance and got.proven
    if got.witness is not None:
        assert dist(apply_bijection(a, got.witness.image), b) == got.distance


def test_brute_force_oracle_c7():
    c = cyclic(7)
    assert class_distance(c, c).distance == _brute_force(c, c).distance == 18


@pytest.mark.parametrize("n", range(4, 10))
def test_delta_iso_cyclic(n):
    assert delta_iso_cyclic(n).distance == {4: 7, 5: 12, 6: 8, 7: 18, 8: 16, 9: 18}[n]


@pytest.mark.parametrize("pair", [("C8", "D8"), ("Q8", "C2^3"), ("C9", "C3^2"), ("S3", "C6")])
def test_backends_agree(pair):
    a, b = by_name(pair[0]), by_name(pair[1])
    fast = class_distance(a, b)
    slow = class_distance(a, b, pure=True)
    assert fast.distance == slow.distance and fast.proven and slow.proven
    assert dist(apply_bijection(a, slow.witness.image), b) == slow.distance


def test_witness_realizes_distance():
    a, b = by_name("D8"), by_name("Q8")
    res = class_distance(a, b)
    assert dist(apply_bijection(a, res.witness.image), b) == res.distance == 16


def test_upper_bound_and_budget():
    c8 = by_name("C8")
    res = class_distance(c8, c8, SearchConfig(initial_upper_bound=15))
    assert res.distance is None and res.proven and res.lower_bound == 16
    capped = class_distance(by_name("C8"), by_name("C2^3"), SearchConfig(budget=5))
    assert not capped.proven
    assert capped.distance is None or capped.distance >= 28


def test_parallel_matches_serial():
    a, b = by_name("D10"), by_name("C10")
    par = class_distance(a, b, SearchConfig(parallel=True, workers=2))
    assert par.distance == class_distance(a, b).distance == 40 and par.proven


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        class_distance(cyclic(4), cyclic(5))
    with pytest.raises(ValueError):
        SearchConfig(aut_depth=-1)


def test_transposition_min_matches_delta0():
    assert transposition_min(cyclic(7))[0] == 24
    assert transposition_min(by_name("S3"))[0] == 16


def test_neighbor_matrix_uses_cache(tmp_path):
    cache = DistCache(tmp_path)
    nm = neighbor_matrix(6, cache=cache)
    assert nm.values == [[16, 12], [12, 8]]
    again = DistCache(tmp_path)
    assert again.get("S3", "C6") == (12, True)
    # a poisoned proven entry is trusted, showing the cache was read
    again.put("C6", "C6", 99, True)
    assert neighbor_matrix(6, cache=again).values[1][1] == 99


@st.composite
def partial_map(draw):
    name = draw(st.sampled_from(["C8", "D8", "Q8", "C9", "C3^2", "D10", "A4", "Dic3", "C12"]))
    other = draw(st.sampled_from([nm for nm, t in catalog(by_name(name).n)]))
    a, b = by_name(other), by_name(name)
    F = draw(fixing_zero(a.n))
    keep = draw(st.lists(st.booleans(), min_size=a.n, max_size=a.n))
    f = [int(F[x]) if (keep[x] or x == 0) else -1 for x in range(a.n)]
    return a, b, F, f


@settings(max_examples=150)
@given(partial_map())
def test_guaranteed_bound_is_sound(args):
    a, b, F, f = args
    n = a.n
    A, B = a.table.tolist(), b.table.tolist()
    oa, ob = element_orders(a), element_orders(b)
    rowlb = [[mismatch_value(n, int(ob[x]), int(oa[y])) for y in range(n)] for x in range(n)]
    total = sum(A[F[x]][F[y]] != F[B[x][y]] for x in range(n) for y in range(n))
    assert _kernels.pure.guaranteed_from_scratch(A, B, f, rowlb, 0) <= total


def test_left_division():
    t = by_name("S3")
    L = left_division(t)
    for x in range(6):
        for c in range(6):
            assert t.mul(x, int(L[x, c])) == c
