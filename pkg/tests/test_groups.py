import numpy as np
import pytest
from hypothesis import given, strategies as st

from strategies import fixing_zero

from groupdist.catalog import GROUP_COUNTS, MAX_ORDER, by_name, catalog, catalog_table, identify
from groupdist.errors import UnsupportedOrder
from groupdist.groups import (
    CayleyTable, ElementMap, apply_bijection, are_isomorphic, automorphisms, center, cyclic,
    dihedral, dicyclic, direct_product, element_orders, find_isomorphism, is_abelian, is_group,
    is_normal, normal_subgroups, verify_group,
)


@pytest.mark.parametrize("n", range(1, MAX_ORDER + 1))
def test_catalog_counts_and_validity(n):
    cat = catalog(n)
    assert len(cat) == GROUP_COUNTS[n]
    for _, t in cat:
        assert t.n == n and is_group(t)
        assert (t.table[0] == np.arange(n)).all()
    for i, (_, a) in enumerate(cat):
        for _, b in cat[i + 1:]:
            assert not are_isomorphic(a, b)


def test_catalog_orders_match_gap_listing():
    assert [c[0] for c in catalog(8)] == ["C8", "C4xC2", "D8", "Q8", "C2^3"]
    assert [c[0] for c in catalog(12)] == ["Dic3", "C12", "A4", "D12", "C6xC2"]
    assert [c[0] for c in catalog(18)] == ["D18", "C18", "C3xS3", "C3^2:C2", "C6xC3"]


def test_catalog_out_of_range():
    with pytest.raises(UnsupportedOrder):
        catalog(MAX_ORDER + 1)
    with pytest.raises(UnsupportedOrder):
        catalog_table(8, 6)


def test_named_constructors():
    assert are_isomorphic(dihedral(4), by_name("D8"))
    assert are_isomorphic(dicyclic(2), by_name("Q8"))
    assert are_isomorphic(direct_product(cyclic(2), cyclic(4)), by_name("C4xC2"))
    assert len(center(by_name("Q8"))) == 2
    assert not is_abelian(by_name("S3"))
    assert len(automorphisms(by_name("C2^3"))) == 168


def test_verify_group_reports_violations():
    t = cyclic(5).table.copy()
    t[1, 1], t[1, 2] = t[1, 2], t[1, 1]
    bad = verify_group(CayleyTable(t))
    assert bad and {v.kind for v in bad} <= {"latin-row", "latin-column", "identity", "associativity"}


def test_normal_subgroups_of_s3():
    s3 = by_name("S3")
    sizes = sorted(len(s) for s in normal_subgroups(s3))
    assert sizes == [1, 3, 6]
    assert all(is_normal(s3, s) for s in normal_subgroups(s3))


@given(st.integers(4, 12).flatmap(lambda n: st.tuples(
    st.sampled_from(range(1, len(catalog(n)) + 1)), fixing_zero(n), st.just(n))))
def test_identify_is_relabel_invariant(args):
    i, perm, n = args
    t = catalog_table(n, i)
    u = apply_bijection(t, perm)
    assert is_group(u)
    assert identify(u)[0] == i
    iso = find_isomorphism(t, u)
    assert iso is not None
    f = iso.image
    for x in range(n):
        for y in range(n):
            assert f[t.mul(x, y)] == u.mul(f[x], f[y])


@given(fixing_zero(7))
def test_element_map_inverse(perm):
    f = ElementMap(perm)
    assert (f.compose(f.inverse()).image == np.arange(7)).all()
    assert sorted(element_orders(apply_bijection(cyclic(7), f.image)).tolist()) == [1] + [7] * 6
