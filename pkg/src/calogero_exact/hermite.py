"""Physicists' Hermite polynomials: exact algebra and stable evaluation."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath

__all__ = [
    "hermite_function_eval",
    "hermite_functions",
    "hermite_poly_coefficients",
    "linearize_product",
    "monomial_to_hermite",
    "monomial_to_hermite_scaled",
]


@lru_cache(maxsize=None)
def hermite_poly_coefficients(k: int) -> tuple[int, ...]:
    """Integer monomial coefficients of ``H_k``, lowest degree first."""
    if k == 0:
        return (1,)
    if k == 1:
        return (0, 2)
    prev, cur = [1], [0, 2]
    for n in range(1, k):
        # H_{n+1} = 2x H_n - 2n H_{n-1}
        nxt = [0] * (n + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= 2 * n * c
        prev, cur = cur, nxt
    return tuple(cur)


def _two_factor(a: dict[int, int], n: int) -> dict[int, int]:
    # H_m H_n = sum_k 2^k k! C(m,k) C(n,k) H_{m+n-2k}
    out: dict[int, int] = {}
    for m, c in a.items():
        for k in range(min(m, n) + 1):
            q = m + n - 2 * k
            out[q] = out.get(q, 0) + c * (2**k) * factorial(k) * comb(m, k) * comb(n, k)
    return out


def linearize_product(degrees) -> dict[int, int]:
    """Integer coefficients ``L_q`` with ``prod_m H_{k_m} = sum_q L_q H_q``.

    Only degrees with ``q`` of the same parity as ``sum(degrees)`` appear.
    """
    degrees = list(degrees)
    if not degrees:
        raise ValueError("linearize_product needs at least one degree")
    acc = {degrees[0]: 1}
    for n in degrees[1:]:
        acc = _two_factor(acc, n)
    return {q: c for q, c in sorted(acc.items()) if c}


@lru_cache(maxsize=None)
def monomial_to_hermite_scaled(d: int) -> tuple[int, ...]:
    """Integers ``g_k`` with ``(2x)^d = sum_k g_k H_k / k!``.

    ``g_k = d! / ((d-k)/2)!`` for ``k <= d`` of the parity of ``d``, else 0.
    Returned as a tuple indexed by ``k`` (length ``d + 1``).
    """
    out = [0] * (d + 1)
    fd = factorial(d)
    for k in range(d % 2, d + 1, 2):
        out[k] = fd // factorial((d - k) // 2)
    return tuple(out)


def monomial_to_hermite(d: int) -> dict[int, Fraction]:
    """Rational coefficients of ``x**d`` in the Hermite basis."""
    scaled = monomial_to_hermite_scaled(d)
    den = 2**d
    return {
        k: Fraction(g, den * factorial(k)) for k, g in enumerate(scaled) if g
    }


def hermite_functions(kmax: int, x, digits: int | None = None) -> list:
    """``[psi_0(x), ..., psi_kmax(x)]`` for the orthonormal Hermite functions.

    Uses the normalized three-term recurrence, so nothing overflows for large
    ``kmax``. ``x`` may be an ``mpf``, a float, or anything mpmath accepts.
    With ``digits`` set, evaluation runs at that precision (plus guard digits);
    otherwise at the ambient mpmath precision.
    """
    if digits is None:
        return _hermite_functions(kmax, x)
    with mpmath.workdps(digits + 5):
        return _hermite_functions(kmax, mpmath.mpf(x))


def _hermite_functions(kmax, x):
    x = mpmath.mpf(x)
    vals = [mpmath.exp(-x * x / 2) / mpmath.root(mpmath.pi, 4)]
    if kmax >= 1:
        vals.append(mpmath.sqrt(2) * x * vals[0])
    for k in range(1, kmax):
        vals.append(
            mpmath.sqrt(mpmath.mpf(2) / (k + 1)) * x * vals[k]
            - mpmath.sqrt(mpmath.mpf(k) / (k + 1)) * vals[k - 1]
        )
    return vals[: kmax + 1]


def hermite_function_eval(k: int, x, digits: int = 50):
    """Orthonormal Hermite function ``psi_k(x)``."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return hermite_functions(k, x, digits)[k]
