import pytest
from hypothesis import given, strategies as st

from oddbrauer.arith import is_prime, val_p
from oddbrauer.gaussian import (
    ONE_PLUS_I_CUBED,
    GaussInt,
    NotDivisible,
    PlaceKind,
    conj,
    exact_div,
    gauss_val,
    is_primary,
    norm,
    places_above,
    primary_generator,
)

gints = st.builds(GaussInt, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
nonzero = gints.filter(bool)


def test_ring_examples():
    assert conj(GaussInt(-1, 2)) == GaussInt(-1, -2)
    assert norm(GaussInt(3, 2)) == 13
    assert exact_div(GaussInt(-2, 2), GaussInt(1, 1)) == GaussInt(0, 2)
    assert exact_div(GaussInt(-1, 2) - 1, ONE_PLUS_I_CUBED) == GaussInt(1)
    assert GaussInt(1, 1) ** 3 == ONE_PLUS_I_CUBED


def test_exact_div_raises():
    with pytest.raises(NotDivisible):
        exact_div(GaussInt(3), GaussInt(2, 1))
    with pytest.raises(ZeroDivisionError):
        exact_div(GaussInt(3), GaussInt(0))


@given(gints, nonzero)
def test_exact_div_inverts_mul(x, y):
    assert exact_div(x * y, y) == x


@given(gints, gints)
def test_norm_multiplicative(x, y):
    assert norm(x * y) == norm(x) * norm(y)


def test_is_primary_examples():
    assert is_primary(GaussInt(-1, 2))
    assert not is_primary(GaussInt(2, 1))
    assert is_primary(GaussInt(1))
    norm5 = [a for base in (GaussInt(2, 1), GaussInt(2, -1)) for a in base.associates()]
    assert [x for x in norm5 if is_primary(x)] == [GaussInt(-1, 2), GaussInt(-1, -2)]


@pytest.mark.parametrize("p,pi", [(5, GaussInt(-1, 2)), (13, GaussInt(3, 2)), (17, GaussInt(1, 4))])
def test_primary_generator(p, pi):
    got = primary_generator(p)
    assert got == pi
    assert is_primary(got) and is_primary(got.conj()) and got.norm() == p


def test_primary_generator_rejects():
    for p in (3, 7, 2, 21):
        with pytest.raises(ValueError):
            primary_generator(p)


def test_exactly_one_primary_associate_up_to_norm_10k():
    for a in range(0, 101):
        for b in range(-100, 101):
            x = GaussInt(a, b)
            n = x.norm()
            if n > 10**4 or n % 2 == 0:
                continue
            # Gaussian primes of odd norm: norm a prime p ≡ 1 mod 4, or p^2 with p ≡ 3 mod 4 and x = p·unit
            prime = is_prime(n) or (b == 0 and is_prime(a) and a % 4 == 3)
            if prime:
                assert sum(is_primary(u) for u in x.associates()) == 1


def test_places_above():
    assert places_above(3) == [places_above(3)[0]]
    assert places_above(3)[0].kind is PlaceKind.INERT
    split = places_above(5)
    assert [pl.generator for pl in split] == [GaussInt(2, 1), GaussInt(2, -1)]
    assert all(pl.kind is PlaceKind.SPLIT and pl.generator.norm() == 5 for pl in split)
    assert places_above(7)[0].generator == GaussInt(7)
    with pytest.raises(ValueError):
        places_above(2)


def test_gauss_val_examples():
    assert gauss_val(GaussInt(0, 48), places_above(3)[0]) == 1
    assert gauss_val(GaussInt(0, 4), places_above(5)[0]) == 0
    assert gauss_val(GaussInt(-2, 2), places_above(3)[0]) == 0
    assert [gauss_val(GaussInt(2, 1) ** 3 * GaussInt(2, -1), v) for v in places_above(5)] == [3, 1]


ells = st.sampled_from([3, 5, 7, 11, 13, 17, 19, 29])


@given(nonzero, nonzero, ells)
def test_gauss_val_additive(x, y, ell):
    for v in places_above(ell):
        assert gauss_val(x * y, v) == gauss_val(x, v) + gauss_val(y, v)


@given(nonzero, ells)
def test_gauss_val_sums_to_norm_valuation(x, ell):
    total = sum(v.residue_degree * gauss_val(x, v) for v in places_above(ell))
    assert total == val_p(x.norm(), ell)
