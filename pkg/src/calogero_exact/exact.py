"""Exact numbers of the form ``rational * sqrt(squarefree integer)``.

Every expansion coefficient and every reduced-density-matrix entry produced by
this package lives in this set, so :class:`Radical` is the only exact number
type needed besides :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import mpmath

__all__ = [
    "MismatchedRadicand",
    "Radical",
    "radical_add",
    "radical_from_sqrt",
    "radical_mul",
    "square_free_decompose",
    "to_real",
]

DEFAULT_DIGITS = 50

_SMALL_PRIME_LIMIT = 1000


class MismatchedRadicand(ValueError):
    """Two nonzero radicals with different radicands were added."""


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (_SMALL_PRIME_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(_SMALL_PRIME_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@lru_cache(maxsize=65536)
def square_free_decompose(m: int) -> tuple[int, int]:
    """Split ``m >= 1`` as ``m = f**2 * s`` with ``s`` square-free.

    Returns ``(s, f)``.
    """
    if m < 1:
        raise ValueError(f"square_free_decompose needs m >= 1, got {m}")
    s, f = 1, 1
    rest = m
    for p in _small_primes():
        if p * p > rest:
            break
        if rest % p:
            continue
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    if rest > 1:
        r = isqrt(rest)
        if r * r == rest:
            f *= r
        elif rest < _SMALL_PRIME_LIMIT**2:
            s *= rest  # no factor below the sieve limit, so prime
        else:
            s2, f2 = _trial_decompose(rest, _SMALL_PRIME_LIMIT + 1)
            s *= s2
            f *= f2
    return s, f


def _trial_decompose(m: int, start: int) -> tuple[int, int]:
    # Slow path for cofactors with no small prime divisors; factorial-built
    # radicands never get here.
    s, f = 1, 1
    d = start | 1
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            f *= d ** (e // 2)
            if e % 2:
                s *= d
        d += 2
    if m > 1:
        s *= m
    return s, f


@dataclass(frozen=True, slots=True)
class Radical:
    """The real number ``coefficient * sqrt(radicand)`` in canonical form.

    ``radicand`` is square-free, and zero is always ``Radical(0, 1)``.
    Construct through :meth:`make` or the module functions unless the
    arguments are already canonical.
    """

    coefficient: Fraction
    radicand: int = 1

    @classmethod
    def make(cls, coefficient: Fraction | int, radicand: int = 1) -> Radical:
        coefficient = Fraction(coefficient)
        if radicand < 1:
            raise ValueError("radicand must be a positive integer")
        if coefficient == 0:
            return cls(Fraction(0), 1)
        s, f = square_free_decompose(radicand)
        return cls(coefficient * f, s)

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0

    def square(self) -> Fraction:
        return self.coefficient * self.coefficient * self.radicand

    def sign(self) -> int:
        return (self.coefficient > 0) - (self.coefficient < 0)

    def __neg__(self) -> Radical:
        return Radical(-self.coefficient, self.radicand)

    def __add__(self, other: Radical) -> Radical:
        return radical_add(self, other)

    def __sub__(self, other: Radical) -> Radical:
        return radical_add(self, -other)

    def __mul__(self, other: Radical | Fraction | int) -> Radical:
        if not isinstance(other, Radical):
            return Radical.make(self.coefficient * Fraction(other), self.radicand)
        return radical_mul(self, other)

    __rmul__ = __mul__

    def __abs__(self) -> Radical:
        return Radical(abs(self.coefficient), self.radicand)

    def __str__(self) -> str:
        if self.radicand == 1:
            return str(self.coefficient)
        return f"{self.coefficient}*sqrt({self.radicand})"

    def to_triple(self) -> list[str]:
        """``[numerator, denominator, radicand]`` as decimal strings."""
        return [
            str(self.coefficient.numerator),
            str(self.coefficient.denominator),
            str(self.radicand),
        ]

    @classmethod
    def from_triple(cls, triple) -> Radical:
        num, den, rad = (int(t) for t in triple)
        return cls.make(Fraction(num, den), rad)


ZERO = Radical(Fraction(0), 1)
ONE = Radical(Fraction(1), 1)


def radical_from_sqrt(r: Fraction | int) -> Radical:
    """Exact ``sqrt(r)`` for a nonnegative rational ``r``."""
    r = Fraction(r)
    if r < 0:
        raise ValueError(f"radical_from_sqrt needs a nonnegative rational, got {r}")
    if r == 0:
        return ZERO
    # sqrt(p/q) = sqrt(p*q)/q
    s, f = square_free_decompose(r.numerator * r.denominator)
    return Radical(Fraction(f, r.denominator), s)


def radical_add(a: Radical, b: Radical) -> Radical:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.radicand != b.radicand:
        raise MismatchedRadicand(f"cannot add {a} and {b}")
    c = a.coefficient + b.coefficient
    return Radical(c, a.radicand) if c else ZERO


def radical_mul(a: Radical, b: Radical) -> Radical:
    if a.is_zero or b.is_zero:
        return ZERO
    g_rad = a.radicand * b.radicand
    s, f = square_free_decompose(g_rad)
    return Radical(a.coefficient * b.coefficient * f, s)


def to_real(a: Radical | Fraction | int, digits: int = DEFAULT_DIGITS) -> mpmath.mpf:
    """Evaluate to an ``mpmath.mpf`` with relative error below ``10**(1-digits)``.

    The square root is taken with integer arithmetic; mpmath only performs the
    final division, at ``digits`` plus guard digits.
    """
    if not isinstance(a, Radical):
        a = Radical.make(Fraction(a))
    if a.is_zero:
        return mpmath.mpf(0)
    guard = digits + 10
    scale = 10**guard
    root = isqrt(a.radicand * scale * scale)  # floor(sqrt(s) * 10**guard)
    num = a.coefficient.numerator * root
    den = a.coefficient.denominator * scale
    with mpmath.workdps(guard):
        return mpmath.mpf(num) / den
