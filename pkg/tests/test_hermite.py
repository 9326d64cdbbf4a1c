from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from calogero_exact.hermite import (
    hermite_function_eval,
    hermite_functions,
    hermite_poly_coefficients,
    linearize_product,
    monomial_to_hermite,
    monomial_to_hermite_scaled,
)
from calogero_exact.oracle import gauss_hermite, linearization_closed_form


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_add(acc, coeffs, scale):
    if len(acc) < len(coeffs):
        acc.extend([0] * (len(coeffs) - len(acc)))
    for i, c in enumerate(coeffs):
        acc[i] += scale * c
    return acc


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def test_low_order_polynomials():
    assert hermite_poly_coefficients(0) == (1,)
    assert hermite_poly_coefficients(1) == (0, 2)
    assert hermite_poly_coefficients(2) == (-2, 0, 4)
    assert hermite_poly_coefficients(3) == (0, -12, 0, 8)
    assert hermite_poly_coefficients(4) == (12, 0, -48, 0, 16)


def test_two_factor_rule():
    # H_1 H_1 = H_2 + 2 H_0 ; H_2 H_1 = H_3 + 4 H_1
    assert linearize_product([1, 1]) == {0: 2, 2: 1}
    assert linearize_product([2, 1]) == {1: 4, 3: 1}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=4))
def test_linearization_reproduces_product(degrees):
    lhs = [1]
    for k in degrees:
        lhs = poly_mul(lhs, hermite_poly_coefficients(k))
    rhs = []
    for q, c in linearize_product(degrees).items():
        rhs = poly_add(rhs, hermite_poly_coefficients(q), c)
    assert trim(lhs) == trim(rhs)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=4))
def test_linearization_closed_form_agrees(degrees):
    assert linearization_closed_form(degrees) == linearize_product(degrees)


@pytest.mark.parametrize("d", range(0, 13))
def test_monomial_inversion(d):
    # x^d == sum_k c_k H_k
    rhs = []
    for k, c in monomial_to_hermite(d).items():
        rhs = poly_add(rhs, [Fraction(x) for x in hermite_poly_coefficients(k)], c)
    assert trim(rhs) == [0] * d + [1]


def test_scaled_monomial_coefficients():
    # (2x)^d = sum_k g_k H_k / k!
    for d in range(10):
        g = monomial_to_hermite_scaled(d)
        rhs = []
        for k, gk in enumerate(g):
            if gk:
                rhs = poly_add(rhs, [Fraction(x) for x in hermite_poly_coefficients(k)], Fraction(gk, factorial(k)))
        assert trim(rhs) == [0] * d + [2**d]


def test_hermite_functions_orthonormal():
    xs, ws = gauss_hermite(12, 30)
    with mpmath.workdps(30):
        vals = [hermite_functions(7, x, 30) for x in xs]
        for a in range(8):
            for b in range(8):
                # psi_a psi_b = h_a h_b exp(-x^2); undo the Gaussian for the weights
                s = mpmath.fsum(w * mpmath.exp(x * x) * v[a] * v[b] for x, w, v in zip(xs, ws, vals))
                assert abs(s - (1 if a == b else 0)) < mpmath.mpf(10) ** -25


def test_hermite_function_eval_matches_closed_form():
    x = mpmath.mpf("0.7")
    with mpmath.workdps(40):
        ref = mpmath.hermite(5, x) * mpmath.exp(-x * x / 2) / mpmath.sqrt(2**5 * factorial(5) * mpmath.sqrt(mpmath.pi))
        assert abs(hermite_function_eval(5, x, 40) - ref) < mpmath.mpf(10) ** -35


def test_gauss_hermite_exactness():
    xs, ws = gauss_hermite(6, 30)
    with mpmath.workdps(30):
        for k in range(12):
            s = mpmath.fsum(w * x**k for x, w in zip(xs, ws))
            ref = 0 if k % 2 else mpmath.gamma(mpmath.mpf(k + 1) / 2)
            assert abs(s - ref) < mpmath.mpf(10) ** -25
