import pytest
from hypothesis import given, settings, strategies as st

from groupdist import sieve
from groupdist.errors import InvalidOrder, MissingMu
from groupdist.io import MuCache
from groupdist.metrics import delta0_n
from groupdist.sieve import (
    CHAIN, Quadruple, bound_pipeline, default_mu, enumerate_quadruples, is_valid, lemma_2p_bound,
    m2_stage, run_sieve, section10_bounds,
)
from groupdist.special import m2_min_distance

from golden import BOUND_LINES, QUADRUPLES_20, QUADRUPLES_7, QUADRUPLES_82, STAGE_COUNTS


@pytest.fixture(scope="module")
def run():
    return run_sieve()


def tuples(qs):
    return sorted((q.n, q.h, q.k, q.m) for q in qs)


def test_stage_counts(run):
    assert run.counts == STAGE_COUNTS


def test_survivor_lists(run):
    assert tuples(run.survivors("N32")) == QUADRUPLES_82
    assert tuples(run.survivors("H")) == QUADRUPLES_20
    assert tuples(run.survivors()) == QUADRUPLES_7
    assert tuples(run.survivors("PIPELINE")) == QUADRUPLES_7


def test_bound_lines(run):
    lines = [b.line() for b in run.pipeline if b.eliminatedBy == "NONE"]
    assert lines == BOUND_LINES


def test_worked_elimination():
    b = bound_pipeline(Quadruple(24, 1, 16, 3))
    assert (b.neededProfit, b.rMax, b.sMax, b.tMax, b.uMin) == (12, 1, 6, 6, 32)
    assert b.eliminatedBy == "MATCHING" and b.matchingEll == 3


def test_stages_are_nested(run):
    prev = set(enumerate_quadruples())
    for label in sieve.STAGE_LABELS:
        cur = set(run.survivors(label))
        assert cur <= prev
        prev = cur


def test_enumeration_size():
    qs = enumerate_quadruples()
    assert len(qs) == len(set(qs)) == 14431
    assert all(is_valid(q) for q in qs)


def test_m2_stage_with_computed_distances(run):
    # the closed form agrees with the two-cell search wherever both apply
    for n in range(4, 21, 2):
        expect = n * n // 4 - (0 if n % 4 == 0 else 1)
        assert m2_min_distance(n).distance == expect
    n32 = run.survivors("N32")
    closed = m2_stage(n32)
    explicit = m2_stage(n32, lambda n: n * n // 4 - (0 if n % 4 == 0 else 1))
    assert closed.survivors == explicit.survivors and closed.count == 43
    assert all(q.m != 2 for q in closed.survivors)


def test_ig_without_bounds_keeps_everything():
    r = run_sieve(m_prime={})
    assert r.counts["IG"] == r.counts["M2"] == 43


def test_lemma_2p():
    b = lemma_2p_bound(22)
    assert (b.mismatch, b.refined, b.threshold, b.holds) == (110, 130, 112, True)
    b = lemma_2p_bound(26)
    assert (b.mismatch, b.threshold, b.holds) == (156, 136, True)
    for bad in (20, 24, 25):
        with pytest.raises(InvalidOrder):
            lemma_2p_bound(bad)


def test_missing_mu():
    with pytest.raises(MissingMu):
        bound_pipeline(Quadruple(24, 1, 16, 3), mu={(1, 8): 1, (2, 8): 8})
    b = bound_pipeline(Quadruple(24, 1, 16, 3), mu=lambda l, v: default_mu(l, v))
    assert b.eliminatedBy == "MATCHING"


def test_default_mu_matches_seed(tmp_path):
    cache = MuCache(tmp_path)
    for (ell, v), val in cache.data.items():
        assert default_mu(ell, v) == val


def test_section10_bounds():
    b = section10_bounds(Quadruple(24, 1, 17, 3), 33)
    assert b.s3_profit == 2 * 24 - 24 - 9 + 1
    assert b.u_capacity == 7 * 6


@settings(max_examples=300)
@given(st.sampled_from(enumerate_quadruples()))
def test_pipeline_invariants(q):
    b = bound_pipeline(q, mu=lambda l, v: default_mu(l, v) if v <= 10 else None) \
        if q.n - q.k <= 10 else None
    if b is None:
        return
    assert b.neededProfit == delta0_n(q.n) - b.baseCount + 1
    assert b.uMin == max(0, 3 * (q.k - q.h) - b.rMax - b.sMax - b.tMax)
    assert 0 <= b.rMax <= q.k - q.h
    assert b.eliminatedBy in ("NONE", "U_CAPACITY", "MATCHING")


@settings(max_examples=300)
@given(st.sampled_from(enumerate_quadruples()))
def test_chain_monotone(q):
    # a quadruple surviving a stage satisfies every earlier inequality
    results = [fn(q) <= delta0_n(q.n) for _, fn in CHAIN]
    if all(results):
        assert q in set(run_sieve_cached().survivors("N32"))


_RUN = []


def run_sieve_cached():
    if not _RUN:
        _RUN.append(run_sieve())
    return _RUN[0]
