from fractions import Fraction
from math import isqrt

import mpmath
import pytest
from hypothesis import given, strategies as st

from calogero_exact.exact import (
    ONE,
    ZERO,
    MismatchedRadicand,
    Radical,
    radical_add,
    radical_from_sqrt,
    radical_mul,
    square_free_decompose,
    to_real,
)


def is_square_free(n):
    return all(n % (k * k) for k in range(2, isqrt(n) + 1))


@given(st.integers(min_value=1, max_value=10**9))
def test_square_free_decompose_roundtrip(m):
    s, f = square_free_decompose(m)
    assert f * f * s == m
    assert is_square_free(s)


def test_square_free_large_prime_square():
    p = 1_000_003
    assert square_free_decompose(p * p * 6) == (6, p)


@pytest.mark.parametrize("m", [0, -4])
def test_square_free_rejects_nonpositive(m):
    with pytest.raises(ValueError):
        square_free_decompose(m)


def test_canonical_form():
    r = Radical.make(Fraction(1, 3), 12)
    assert (r.coefficient, r.radicand) == (Fraction(2, 3), 3)
    assert Radical.make(5, 9) == Radical.make(15, 1)
    assert Radical.make(0, 7) == ZERO


@given(st.fractions(min_value=0, max_value=1000, max_denominator=500))
def test_sqrt_squares_back(r):
    a = radical_from_sqrt(r)
    assert a.square() == r
    assert a.sign() >= 0


def test_sqrt_of_fraction():
    # sqrt(1/6) = sqrt(6)/6
    a = radical_from_sqrt(Fraction(1, 6))
    assert (a.coefficient, a.radicand) == (Fraction(1, 6), 6)


def test_add_requires_matching_radicand():
    a = Radical.make(1, 2)
    assert radical_add(a, a) == Radical.make(2, 2)
    assert radical_add(a, ZERO) == a
    assert radical_add(ZERO, a) == a
    assert radical_add(a, -a) == ZERO
    with pytest.raises(MismatchedRadicand):
        radical_add(a, Radical.make(1, 3))


def test_mul_recanonicalizes():
    assert radical_mul(Radical.make(1, 6), Radical.make(1, 6)) == Radical.make(6, 1)
    assert radical_mul(Radical.make(2, 2), Radical.make(3, 3)) == Radical.make(6, 6)
    assert Radical.make(1, 2) * Fraction(1, 2) == Radical.make(Fraction(1, 2), 2)
    assert radical_mul(ONE, Radical.make(-1, 5)) == Radical.make(-1, 5)


def test_triple_roundtrip():
    r = Radical.make(Fraction(-3, 20), 22)
    assert Radical.from_triple(r.to_triple()) == r
    assert r.to_triple() == ["-3", "20", "22"]


def test_to_real_precision():
    r = Radical.make(Fraction(1, 6), 3)
    with mpmath.workdps(80):
        ref = mpmath.sqrt(3) / 6
        assert abs(to_real(r, 60) - ref) < mpmath.mpf(10) ** -60
    assert to_real(Fraction(1, 4)) == mpmath.mpf("0.25")
    assert to_real(ZERO) == 0


def test_str():
    assert str(Radical.make(Fraction(1, 20), 6)) == "1/20*sqrt(6)"
    assert str(Radical.make(Fraction(7, 20))) == "7/20"
