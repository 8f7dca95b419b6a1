from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgecheck.scalars import (
    GaussRational,
    I,
    conj,
    format_scalar,
    i_power,
    parse_scalar,
)

rationals = st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**4)
gaussians = st.builds(GaussRational, rationals, rationals)


def test_basic_arithmetic():
    z = GaussRational(F(1, 2), F(-3, 4))
    assert z + z == GaussRational(1, F(-3, 2))
    assert z * GaussRational(0, 1) == GaussRational(F(3, 4), F(1, 2))
    assert I * I == GaussRational(-1)
    assert (1 - I) * (1 + I) == GaussRational(2)


def test_division_is_exact_inverse():
    z = GaussRational(F(3, 7), F(-2, 5))
    assert z / z == GaussRational(1)
    assert (GaussRational(1) / z) * z == GaussRational(1)
    with pytest.raises(ZeroDivisionError):
        GaussRational(1) / GaussRational(0)


@given(gaussians)
def test_conjugation_is_involutive(z):
    assert conj(conj(z)) == z


@given(gaussians, gaussians)
def test_conjugation_is_ring_map(z, w):
    assert conj(z * w) == conj(z) * conj(w)
    assert conj(z + w) == conj(z) + conj(w)


@given(rationals)
def test_rational_inverse_cancels(q):
    if q:
        assert q * (1 / q) == 1


def test_i_power_cycle():
    assert [i_power(k) for k in range(4)] == [
        GaussRational(1),
        I,
        GaussRational(-1),
        GaussRational(0, -1),
    ]
    assert i_power(-2) == GaussRational(-1)
    assert i_power(-1) == GaussRational(0, -1)


@pytest.mark.parametrize(
    "text, value",
    [
        ("3/4", F(3, 4)),
        ("-5", F(-5)),
        ("0/1", F(0)),
        ("1/2+3/4 i", GaussRational(F(1, 2), F(3, 4))),
        ("1/2-3/4 i", GaussRational(F(1, 2), F(-3, 4))),
        ("i", I),
        ("-i", GaussRational(0, -1)),
        ("3i", GaussRational(0, 3)),
        ("-2/5i", GaussRational(0, F(-2, 5))),
    ],
)
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


def test_parse_rejects_garbage():
    for bad in ["", "one", "1..2", "1/2+", "ii"]:
        with pytest.raises(ValueError):
            parse_scalar(bad)


@given(gaussians)
def test_format_parse_round_trip(z):
    assert parse_scalar(format_scalar(z)) == z


@given(rationals)
def test_format_parse_round_trip_rational(q):
    assert parse_scalar(format_scalar(q)) == q
