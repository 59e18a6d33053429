from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sdtree.ieee import (
    BINARY32,
    BINARY64,
    Overflow,
    get_format,
    hex_float,
    parse_literal,
    round_to_format,
    to_native,
)

finite64 = st.floats(allow_nan=False, allow_infinity=False)
finite32 = st.floats(width=32, allow_nan=False, allow_infinity=False)


@given(st.fractions(max_denominator=10**30))
def test_round64_matches_python_division(x):
    # int/int true division in CPython is correctly rounded
    try:
        expected = x.numerator / x.denominator
    except OverflowError:
        with pytest.raises(Overflow):
            round_to_format(x, BINARY64)
        return
    assert round_to_format(x, BINARY64) == Fraction(expected)


@given(finite64, finite64)
def test_round64_matches_hardware_addition(a, b):
    exact = Fraction(a) + Fraction(b)
    with np.errstate(over="ignore"):
        hw = np.float64(a) + np.float64(b)
    if np.isinf(hw):
        with pytest.raises(Overflow):
            round_to_format(exact, BINARY64)
    else:
        assert round_to_format(exact, BINARY64) == Fraction(float(hw))


@given(finite32, finite32)
def test_round32_matches_hardware_addition(a, b):
    exact = Fraction(a) + Fraction(b)
    with np.errstate(over="ignore"):
        hw = np.float32(a) + np.float32(b)
    if np.isinf(hw):
        with pytest.raises(Overflow):
            round_to_format(exact, BINARY32)
    else:
        assert round_to_format(exact, BINARY32) == Fraction(float(hw))


def test_ties_to_even():
    ulp_half = Fraction(1, 2**53)
    assert round_to_format(1 + ulp_half, BINARY64) == 1
    assert round_to_format(1 + 3 * ulp_half, BINARY64) == 1 + 4 * ulp_half
    assert round_to_format(Fraction(1) + Fraction(1, 2**24), BINARY32) == 1


def test_subnormals():
    tiny = Fraction(1, 2**1074)
    assert round_to_format(tiny, BINARY64) == tiny
    assert round_to_format(tiny / 2, BINARY64) == 0  # tie, rounds to even zero
    assert round_to_format(tiny * Fraction(3, 4), BINARY64) == tiny
    assert round_to_format(Fraction(1, 2**149), BINARY32) == Fraction(1, 2**149)


def test_overflow_threshold():
    m = BINARY64.max_finite
    assert Fraction(float.fromhex("0x1.fffffffffffffp+1023")) == m
    assert round_to_format(m, BINARY64) == m
    half_ulp = Fraction(2) ** (1023 - 53)
    assert round_to_format(m + half_ulp - 1, BINARY64) == m
    with pytest.raises(Overflow):
        round_to_format(m + half_ulp, BINARY64)
    with pytest.raises(Overflow):
        round_to_format(Fraction(2**128), BINARY32)


def test_to_native():
    assert to_native(Fraction(1, 2), BINARY32).dtype == np.float32
    with pytest.raises(ValueError):
        to_native(Fraction(1, 3), BINARY64)


@pytest.mark.parametrize("v, text", [
    (0.0, "0x0p+0"),
    (-0.0, "-0x0p+0"),
    (1.0, "0x1p+0"),
    (1.5, "0x1.8p+0"),
    (-2.0, "-0x1p+1"),
    (1e16, "0x1.1c37937e08p+53"),
    (5e-324, "0x0.0000000000001p-1022"),
])
def test_hex_float(v, text):
    assert hex_float(v) == text
    assert float.fromhex(text) == v


@given(finite64)
def test_hex_roundtrip(v):
    assert parse_literal(hex_float(v)) == Fraction(v)


@pytest.mark.parametrize("text, value", [
    ("1e16", Fraction(10**16)),
    ("-1e16", Fraction(-(10**16))),
    ("0.1", Fraction(1, 10)),
    (".5", Fraction(1, 2)),
    ("0x1.8p+1", Fraction(3)),
    ("-0X.8P0", Fraction(-1, 2)),
])
def test_parse_literal(text, value):
    assert parse_literal(text) == value


@pytest.mark.parametrize("text", ["inf", "nan", "-inf", "1e", "0xp1", "abc", ""])
def test_parse_literal_rejects(text):
    with pytest.raises(ValueError):
        parse_literal(text)


def test_get_format():
    assert get_format("binary32") is BINARY32
    assert get_format(BINARY64) is BINARY64
    with pytest.raises(ValueError):
        get_format("binary16")
