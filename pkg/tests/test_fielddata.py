import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oddbrauer.brauer import exponent_bound
from oddbrauer.fielddata import (
    MissingPlaces,
    PlaceData,
    SpecError,
    galois_exponent_Q,
    parse_spec,
    places_for_Q,
    places_for_quadratic,
)


def test_places_for_Q_examples():
    assert places_for_Q((1, 1, 1, 3), [3]) == [PlaceData(3, 1, 1, (0, 0, 0, 1))]
    assert all(pl.vals == (0, 0, 0, 0) for pl in places_for_Q((1, 1, 1, 2), [3, 5, 7]))
    assert places_for_Q((9, 1, 1, 1), [3])[0].vals[0] == 2
    assert places_for_Q((Fraction(1, 3), 1, 1, 1), [3])[0].vals[0] == -1


def test_places_for_quadratic_examples():
    split = places_for_quadratic(-1, (1, 1, 1, 1), [5])
    assert len(split) == 2 and all(pl.e == pl.f == 1 for pl in split)
    assert places_for_quadratic(3, (1, 1, 1, 1), [3]) == [PlaceData(3, 2, 1, (0, 0, 0, 0))]
    assert places_for_quadratic(5, (1, 1, 1, 3), [3]) == [PlaceData(3, 1, 2, (0, 0, 0, 1))]
    assert places_for_quadratic(3, (1, 1, 1, 3), [3])[0].vals == (0, 0, 0, 2)
    with pytest.raises(ValueError):
        places_for_quadratic(12, (1, 1, 1, 1), [3])


@given(st.sampled_from([-7, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 15, 21]), st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23]))
def test_quadratic_places_cover_degree(d, p):
    assert sum(pl.e * pl.f for pl in places_for_quadratic(d, (1, 1, 1, 1), [p])) == 2


@pytest.mark.parametrize("coeffs,N", [((1, 1, 1, 1), 1), ((1, 1, 1, -4), 1), ((1, 1, 1, 2), 4), ((1, 1, 1, 4), 2), ((1, 1, -1, 9), 2), ((2, 2, 1, 1), 2), ((2, 8, 1, 1), 1), ((1, 1, 1, 16), 1), ((-1, 1, 1, 1), 2)])
def test_galois_exponent_Q(coeffs, N):
    assert galois_exponent_Q(coeffs) == N


nonzero_q = st.fractions(max_denominator=50).filter(lambda q: q != 0 and abs(q) < 1000)


@given(st.lists(nonzero_q, min_size=4, max_size=4), nonzero_q)
def test_galois_exponent_fourth_power_invariant(coeffs, t):
    scaled = [coeffs[0] * t**4] + coeffs[1:]
    assert galois_exponent_Q(scaled) == galois_exponent_Q(coeffs)


def test_parse_minimal_Q_spec():
    spec = parse_spec('{"field": "Q", "coefficients": [1, 1, 1, 2]}')
    assert spec.N == 4 and spec.field.auto_places
    assert spec.places_above(3) == [PlaceData(3, 1, 1, (0, 0, 0, 0))]
    assert spec.coefficients[3] == Fraction(2)


def test_parse_rational_strings():
    spec = parse_spec({"field": "Q", "coefficients": ["1/3", 1, "-2", 5]})
    assert spec.coefficients == (Fraction(1, 3), 1, -2, 5)
    assert spec.special_primes() == [3, 5]


@pytest.mark.parametrize(
    "doc,path,msg",
    [
        ({"field": "Q", "coefficients": [0, 1, 1, 1]}, "coefficients[0]", "zero coefficient"),
        ({"field": {"abstract": {"degree": 4}}}, "N", "N required for abstract fields"),
        ({"field": {"quadratic": 5}, "coefficients": [1, 1, 1, 1]}, "N", "N required"),
        ({"field": "Q", "coefficients": [1, 1, 1]}, "coefficients", "four"),
        ({"field": "R", "coefficients": [1, 1, 1, 1]}, "field", "unknown"),
        ({"field": "Q", "coefficients": [1, 1, 1, 1], "probes": [7]}, "probes[0]", "1 mod 4"),
        ({"field": "Q", "coefficients": [1, 1, 1, 1], "search_bound": 5}, "search_bound", "13"),
        ({"field": {"abstract": {"degree": 2}}, "N": 4, "places": [{"p": 3, "e": 0, "f": 1, "vals": [0, 0, 0, 0]}]}, "places[0].e", "positive"),
        ({"field": "Q", "coefficients": [1, 1, 1, 3], "places": [{"p": 3, "e": 1, "f": 1, "vals": [0, 0, 0, 0]}]}, "places[0]", "derived"),
        ({"field": "Q", "coefficients": [1, 1, 1, 1], "extra": 1}, "$", "unknown keys"),
    ],
)
def test_parse_errors(doc, path, msg):
    with pytest.raises(SpecError) as err:
        parse_spec(doc)
    assert err.value.path == path
    assert msg in str(err.value)


def test_parse_invalid_json():
    with pytest.raises(SpecError):
        parse_spec("{not json")


def test_abstract_missing_places():
    spec = parse_spec({"field": {"abstract": {"degree": 2}}, "N": 4, "places": [{"p": 3, "e": 1, "f": 1, "vals": [0, 0, 0, 0]}]})
    with pytest.raises(MissingPlaces):
        spec.places_above(3)
    with pytest.raises(MissingPlaces):
        spec.places_above(7)


def test_spec_round_trip():
    for doc in (
        {"field": "Q", "coefficients": ["1", "1", "1", "3"]},
        {"field": {"quadratic": 3}, "coefficients": ["1", "1", "1", "3"], "N": 8, "search_bound": 100},
        {"field": {"abstract": {"degree": 2}}, "N": 40, "places": [{"p": 3, "e": 2, "f": 1, "vals": [0, 0, 0, 1]}], "probes": [5, 13]},
    ):
        spec = parse_spec(json.dumps(doc))
        assert spec.to_dict() == doc
        assert parse_spec(spec.to_dict()).to_dict() == doc


def test_q_i_is_quadratic_minus_one():
    a = parse_spec({"field": "Q(i)", "coefficients": [1, 1, 1, 2]})
    b = parse_spec({"field": {"quadratic": -1}, "coefficients": [1, 1, 1, 2]})
    assert a.N == b.N == 4
    assert a.places_above(5) == b.places_above(5) and len(a.places_above(5)) == 2


@pytest.mark.parametrize("m", [1, 2, 4, 10])
def test_soundness_of_multiples(m):
    for k in (2, 3):
        assert exponent_bound(k * m, [5, 13, 17], 100) >= exponent_bound(m, [5, 13, 17], 100)
