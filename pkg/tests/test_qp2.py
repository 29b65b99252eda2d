import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oddbrauer.qp2 import (
    InsufficientPrecision,
    Plain,
    RootAdjacent,
    Side,
    TwoAdic,
    hilbert2,
    hilbert2_oracle,
    is_square_2adic,
    kummer_example_verify,
)

REPS = [1, 3, 5, 7, -1, -3, -5, -7]


def test_twoadic_basics():
    x = TwoAdic(0, 7, 12)
    s = x + 1
    assert (s.v, s.u, s.K) == (3, 1, 9)
    assert x.square_class() == (0, 7)
    assert TwoAdic.from_rational(Fraction(-3, 8)).square_class() == (1, 5)
    with pytest.raises(ValueError):
        TwoAdic(0, 2, 5)
    with pytest.raises(InsufficientPrecision):
        TwoAdic(0, 1, 2)


def test_precision_loss_raises():
    x = TwoAdic(0, 1, 5)
    with pytest.raises(InsufficientPrecision) as err:
        x - 1  # known only to be 0 mod 2^5
    assert err.value.valuation_lower_bound == 5
    with pytest.raises(InsufficientPrecision):
        (TwoAdic(0, 1 + 8, 5) - 1)  # 2^3·1 with only 2 unit bits left


@settings(max_examples=200)
@given(st.fractions(max_denominator=64).filter(bool), st.fractions(max_denominator=64).filter(bool), st.integers(3, 20))
def test_twoadic_arithmetic_matches_exact(a, b, K):
    exact_a = TwoAdic.from_rational(a)
    # truncate a to K unit bits and compare products and sums with exact arithmetic
    ta = TwoAdic(exact_a.v, exact_a.unit_mod(K), K)
    prod = ta * b
    assert prod.square_class() == TwoAdic.from_rational(a * b).square_class()
    try:
        s = ta + b
    except InsufficientPrecision:
        return
    assert s.square_class() == TwoAdic.from_rational(a + b).square_class()


@pytest.mark.parametrize("x,expected", [(17, True), (2, False), (36, True), (Fraction(9, 4), True), (-1, False), (8, False)])
def test_is_square_examples(x, expected):
    assert is_square_2adic(x) is expected


def test_hilbert_examples():
    assert hilbert2(-1, -1) == -1
    assert hilbert2(2, 7) == 1
    assert all(hilbert2(1, b) == 1 for b in REPS + [2, 6, -2])
    assert hilbert2_oracle(-1, -1) == -1
    assert hilbert2_oracle(2, 7) == 1
    assert hilbert2_oracle(5, -1) == 1


def test_hilbert_on_square_classes_all_valuations():
    classes = [u * 2**v for u in REPS for v in range(4)]
    for a in classes:
        for b in classes:
            assert hilbert2(a, b) == hilbert2_oracle(a, b)


def test_oracle_at_higher_modulus_agrees():
    for a, b in ((-1, -1), (2, 7), (3, -6), (10, 5), (-2, 14)):
        assert hilbert2_oracle(a, b, bits=7) == hilbert2_oracle(a, b)


nonzero = st.fractions(max_denominator=1000).filter(lambda q: q != 0)


@given(nonzero, nonzero, nonzero)
def test_hilbert_bilinear(a, b1, b2):
    assert hilbert2(a, b1 * b2) == hilbert2(a, b1) * hilbert2(a, b2)


@given(nonzero, nonzero)
def test_hilbert_symmetric_and_a_minus_a(a, b):
    assert hilbert2(a, b) == hilbert2(b, a)
    assert hilbert2(a, -a) == 1
    if a != 1:
        assert hilbert2(a, 1 - a) == 1


def test_kummer_full_run():
    report = kummer_example_verify()
    assert report.ok
    assert report.summary().startswith("trivial on all contributing classes; 0 violations")
    assert report.excluded_points == {"x": [-16, -1], "u": [-7, 9]}
    assert report.contributing


def test_kummer_shortcut_val_7():
    for w in range(1, 256, 2):
        x = TwoAdic(7, w, 12)
        assert is_square_2adic((x + 1) * (x + 16))


def test_kummer_spot_class():
    x0, u0 = 1, 1
    f, g = (x0 + 1) * (x0 + 16), (u0 + 7) * (u0 - 9)
    h = x0 * f * u0 * g
    assert (f, g, h) == (34, -64, -2176) and h == 2**7 * -17
    assert TwoAdic.from_rational(h).square_class()[0] == 1


def test_kummer_detects_a_planted_failure():
    report = kummer_example_verify(u_side=Side("u", (7, -3), range(-1, 3)))
    assert report.violations and not report.ok


def test_kummer_refinement_path():
    # K0 = K forces precision refinement next to the roots
    a = kummer_example_verify(K0=12, K=12)
    assert a.ok and a.refinements > 0
    assert a.signature_sets() == kummer_example_verify().signature_sets()


def test_residue_class_descriptors():
    assert str(Plain(0, 3, 12)) == "2^0·(3 mod 2^12)"
    assert Plain(0, 3, 12).split() == (Plain(0, 3, 13), Plain(0, 3 + 4096, 13))
    r = RootAdjacent(-1, 8, 5)
    assert (r.value() + 1).v == 8


def test_random_rational_points_agree_with_oracle():
    """Independent spot check: exact random points on the surface, symbol by exhaustive search."""
    rng = random.Random(20240501)
    hits = 0
    while hits < 40:
        x = Fraction(rng.randint(-2000, 2000), 2 ** rng.randint(0, 3))
        u = Fraction(rng.randint(-400, 400), 2 ** rng.randint(0, 2))
        f, g = (x + 1) * (x + 16), (u + 7) * (u - 9)
        h = x * f * u * g
        if h == 0 or not is_square_2adic(h):
            continue
        hits += 1
        assert hilbert2_oracle(f, g) == 1
