import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from groupdist import constructions as cons
from groupdist.catalog import by_name, catalog, identify_name
from groupdist.errors import EvenA, EvenOrder, NotAbelian, PreconditionFailed
from groupdist.groups import are_isomorphic, cyclic, direct_product, is_group
from groupdist.metrics import dist, profile, rstu

from strategies import near_pairs


def test_sign_function():
    s = cons.SignFunction(2)
    assert [s(i) for i in range(-3, 5)] == [-1, -1, 0, 0, 0, 0, 1, 1]


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_construction1(k):
    r = cons.construction1(cyclic(k))
    n = 2 * k
    assert r.ok and r.actualDistance == n * (n - 2) // 2
    assert r.classes()[1] == identify_name(direct_product(cyclic(k), cyclic(2)))


def test_construction1_preconditions():
    with pytest.raises(EvenOrder):
        cons.construction1(cyclic(4))
    with pytest.raises(NotAbelian):
        cons.construction1(by_name("C7:C3"))


@pytest.mark.parametrize("a,b", [(3, 2), (3, 3), (3, 4), (3, 5), (3, 7), (5, 2), (7, 2)])
def test_construction2(a, b):
    r = cons.construction2(a, b)
    n = a * b
    assert r.ok and r.actualDistance * a * a == n * n * (a * a - 1) // 4
    assert are_isomorphic(r.left, cyclic(n))
    perm = cons.construction2_isomorphism(a, b)
    assert sorted(perm) == list(range(n))


def test_construction2_needs_odd_a():
    with pytest.raises(EvenA):
        cons.construction2(4, 3)


def test_construction3():
    res = cons.construction3()
    assert [r.actualDistance for r in res] == [18, 18, 72, 72]
    assert all(r.ok for r in res)
    assert res[2].classes() == ("C18", "C18")
    assert res[3].classes() == ("D18", "D18")


def test_extension_catalogue():
    res = cons.extension_catalogue()
    assert all(r.ok for r in res)
    got = {r.label: r.classes() for r in res}
    assert got["C6 pair inversion"] == ("D12", "D12")
    assert got["C6 pair dicyclic"] == ("Dic3", "Dic3")
    assert got["C9 pair x C2"] == ("C18", "C6xC3")
    assert got["C9 pair inversion"] == ("D18", "C3^2:C2")


@pytest.mark.parametrize("n", [4, 8, 12, 16])
def test_quarter_constructions_all_inputs(n):
    seen = 0
    for _, g in catalog(n):
        for inp in cons.quarter_inputs(g):
            r = cons.run_quarter(g, inp)
            assert r.ok and r.actualDistance == n * n // 4
            assert is_group(r.right)
            seen += 1
    assert seen > 0


def test_quarter_examples():
    c8 = by_name("C8")
    r = cons.cyclic_construction(c8, [0, 4], 4, 2)
    assert r.actualDistance == 16 and r.classes()[1] == "C4xC2"
    r = cons.run_quarter(by_name("D8"), next(i for i in cons.quarter_inputs(by_name("D8"))
                                             if i[0] == "dihedral"))
    assert r.actualDistance == 16


def test_c3_s3_at_81():
    g = by_name("C3xS3")
    hits = [cons.run_quarter(g, i) for i in cons.quarter_inputs(g)]
    assert any(r.actualDistance == 81 and r.classes() == ("C3xS3", "C3xS3") for r in hits)


def test_quarter_preconditions():
    c8 = by_name("C8")
    with pytest.raises(PreconditionFailed) as e:
        cons.cyclic_construction(c8, [0, 4], 0, 2)
    assert e.value.clause == "central"
    with pytest.raises(PreconditionFailed) as e:
        cons.cyclic_construction(c8, [0, 4], 4, 3)
    assert e.value.clause == "index"
    with pytest.raises(PreconditionFailed) as e:
        cons.cyclic_construction(by_name("S3"), [0, 3], 3, 1)
    assert e.value.clause == "normal"


@settings(max_examples=100)
@given(st.sampled_from(near_pairs()), st.sampled_from(["C2", "C3", "C2^2"]))
def test_pair_extension_multiplicative(pair, kname):
    k = by_name(kname)
    a, b = cons.pair_extension(pair, k)
    assert dist(a, b) == dist(*pair) * k.n * k.n


@pytest.mark.parametrize("fx", cons.fixture_examples(), ids=lambda f: f.name)
def test_fixtures(fx):
    prof = profile(fx.left, fx.right)
    e = fx.expected
    assert prof.dist == e["dist"] and prof.h == e["h"] and prof.k == e["k"]
    assert (identify_name(fx.left), identify_name(fx.right)) == e["classes"]
    assert not are_isomorphic(fx.left, fx.right)
    if "r" in e:
        sets = rstu(fx.left, fx.right)
        assert (sets.r, sets.s) == (e["r"], e["s"])
