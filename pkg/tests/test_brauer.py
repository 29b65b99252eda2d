import pytest
from hypothesis import given, settings, strategies as st

from oddbrauer.brauer import (
    A_value,
    A_value_definitional,
    BoundReport,
    D_group,
    ProbePrime,
    Status,
    delta,
    exponent_bound,
    g_superset,
    phi_upper,
    refine,
    s_candidates,
)
from oddbrauer.gaussian import GaussInt


def test_probe_prime_validation():
    assert ProbePrime.of(5).pi == GaussInt(-1, 2)
    with pytest.raises(ValueError):
        ProbePrime(5, GaussInt(2, 1))


def test_delta_is_purely_imaginary():
    for p in (5, 13, 17, 29):
        for m in range(1, 12):
            assert delta(ProbePrime.of(p), m).re == 0


@pytest.mark.parametrize("p,m,ell,A", [(5, 1, 3, 1), (5, 4, 3, 2), (13, 40, 5, 3)])
def test_A_value_examples(p, m, ell, A):
    assert A_value(p, m, ell) == A


def test_A_value_rejects_bad_probe():
    with pytest.raises(ValueError):
        A_value(5, 4, 5)
    with pytest.raises(ValueError):
        A_value(5, 0, 3)


def test_D_group_examples():
    assert D_group(5, 4, 3, 1) == (3, 3)
    assert D_group(5, 1, 3, 1) == (1, 1)
    tau = A_value_definitional(13, 1, 3, 4)
    assert tau == A_value(13, 1, 3)


def test_D_group_smith_matches_enumeration():
    for p in (5, 13, 17):
        for m in range(1, 7):
            for ell, n in ((3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (11, 1), (13, 1)):
                if ell == p:
                    continue
                assert D_group(p, m, ell, n) == D_group(p, m, ell, n, method="enumerate")


def test_oracle_equivalence_probes_to_30():
    for p in (5, 13, 17, 29):
        for m in range(1, 7):
            for ell in (3, 5, 7, 11, 13):
                if ell == p:
                    continue
                n_max = max(n for n in range(1, 4) if ell**n <= 10**5)
                A = A_value(p, m, ell)
                tau = A_value_definitional(p, m, ell, n_max)
                assert tau == (A if A <= n_max else None)


@given(st.sampled_from([5, 13, 17, 29, 37]), st.integers(1, 12), st.integers(2, 5), st.sampled_from([3, 7, 11, 19, 41]))
def test_A_value_monotone_along_multiples(p, m, k, ell):
    assert A_value(p, k * m, ell) >= A_value(p, m, ell)


@given(st.sampled_from([5, 13, 17, 29, 37]), st.integers(1, 40), st.sampled_from([3, 5, 7, 11, 13, 19, 41]))
def test_A_value_conjugate_invariant(p, m, ell):
    if ell == p:
        return
    probe = ProbePrime.of(p)
    assert A_value(probe, m, ell) == A_value(probe.conjugate(), m, ell)


@pytest.mark.parametrize("ell,m,value,witness", [(3, 1, 0, 5), (5, 40, 2, 13), (79, 40, 0, 17)])
def test_phi_upper_examples(ell, m, value, witness):
    v, w = phi_upper(ell, m, 100)
    assert (v, w.p) == (value, witness)


def test_phi_upper_requires_bound():
    with pytest.raises(ValueError):
        phi_upper(3, 4, 12)


def test_s_candidates_probe_5_alone():
    report = s_candidates(40, [5])
    assert {3, 7, 19, 41, 79, 479, 2879} <= set(report.bounded())
    assert all(k <= 1 for k in report.bounded().values())
    # 5 is the probe's own prime: no admissible probe in this run
    assert report.unbounded() == [5]


def test_s_candidates_three_probes():
    report = s_candidates(40, [5, 13, 17])
    assert report.bounded() == {3: 1, 5: 2, 7: 1, 19: 1, 41: 1}
    for ell in report.excluded():
        entry = report.candidates[ell]
        assert entry.phi_upper == 0 and A_value(entry.witnesses[0], 40, ell) == 1


def test_s_candidates_m1():
    report = s_candidates(1, [5, 13])
    assert not report.surviving() or all(e.status is Status.CERTIFIED_EXCLUDED for e in report.candidates.values())
    assert report.bounded() == {}


def test_exponent_bound_examples():
    assert exponent_bound(40, [5, 13, 17], 100) == 3 * 5**2 * 7 * 19 * 41
    assert exponent_bound(1, [5, 13], 100) == 1
    assert exponent_bound(4, [5, 13], 100) % 3 == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 48), st.sampled_from([[5], [5, 13], [13, 5, 17], [17, 29]]), st.sampled_from([13, 37, 101]))
def test_refinement_monotone(m, probes, bound):
    small = s_candidates(m, probes)
    big = s_candidates(m, probes + [37])
    assert set(big.surviving()) <= set(small.surviving()) | {37}
    a = exponent_bound(m, probes, bound)
    b = exponent_bound(m, probes, 4 * bound)
    assert a % b == 0


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 24), st.integers(2, 3))
def test_multiple_of_N_never_tightens(m, k):
    assert exponent_bound(k * m, [5, 13, 17], 100) % exponent_bound(m, [5, 13, 17], 100) == 0


def test_bound_report_round_trip():
    r = g_superset(40, [5, 13, 17], 100)
    assert BoundReport.from_dict(r.to_dict()).to_dict() == r.to_dict()


def test_refine_resolves_probe_collisions():
    r = refine(s_candidates(40, [5]), 100)
    assert r.unbounded() == []
    assert r.candidates[5].phi_upper == 2
