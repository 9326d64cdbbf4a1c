"""Exact Hermite-basis expansion of the Calogero ground state at integer coupling.

The ground state is ``C * prod_{i<j} (x_i - x_j)**nu * exp(-sum x**2 / 2)``
(with omega = 1). Expanding it in products of orthonormal Hermite functions
gives amplitudes

    a_q = G_q / 2**M * sqrt(K * 2**sum(q) / prod(q_k!))

where ``M = nu*N*(N-1)/2`` is the degree of the Jastrow factor, ``K`` is the
squared normalization constant with the powers of pi divided out, and ``G_q``
is an integer. :class:`CoefficientTensor` stores ``G_q`` on sorted
multi-indices only; every other entry follows from exchange symmetry.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial, prod

from .exact import Radical, radical_from_sqrt
from .hermite import monomial_to_hermite_scaled

log = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_CAP",
    "CoefficientTensor",
    "ModelSpec",
    "ResourceLimitExceeded",
    "estimated_entries",
    "expansion_coefficients",
    "ground_state_energy",
    "normalization_constant_squared",
    "permutation_sign",
    "vandermonde_power_expand",
]

DEFAULT_CAP = 20_000_000


class ResourceLimitExceeded(RuntimeError):
    """The requested instance needs more stored terms than the cap allows."""


@dataclass(frozen=True)
class ModelSpec:
    """``N`` particles, coupling exponent ``nu`` and ``p`` kept particles.

    ``nu`` even gives the symmetric (bosonic) ground state, ``nu`` odd the
    antisymmetric (fermionic) one. The trap frequency is fixed to 1.
    """

    N: int
    nu: int
    p: int = 1

    omega = 1

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"need N >= 2, got N={self.N}")
        if self.nu < 1:
            raise ValueError(f"need integer nu >= 1, got nu={self.nu}")
        if not 1 <= self.p < self.N:
            raise ValueError(f"need 1 <= p < N, got p={self.p}, N={self.N}")

    @property
    def bosonic(self) -> bool:
        return self.nu % 2 == 0

    @property
    def statistics(self) -> str:
        return "boson" if self.bosonic else "fermion"

    @property
    def D(self) -> int:
        """Single-particle basis size ``nu*(N-1) + 1``."""
        return self.nu * (self.N - 1) + 1

    @property
    def M(self) -> int:
        """Total degree of the Jastrow factor."""
        return self.nu * self.N * (self.N - 1) // 2

    @property
    def dim(self) -> int:
        return self.D**self.p

    @property
    def interaction_strength(self) -> int:
        return self.nu * (self.nu - 1)

    def with_p(self, p: int) -> ModelSpec:
        return ModelSpec(self.N, self.nu, p)


def ground_state_energy(spec: ModelSpec) -> Fraction:
    return Fraction(((spec.N - 1) * spec.nu + 1) * spec.N, 2) * spec.omega


def normalization_constant_squared(spec: ModelSpec) -> Fraction:
    """``C**2 * pi**(N/2)``, an exact rational."""
    N, nu = spec.N, spec.nu
    value = Fraction(2 ** ((N - 1) * N * nu // 2))
    for j in range(1, N + 1):
        value *= Fraction(factorial(nu), factorial(j * nu))
    return value


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq``; 0 if it has repeated values."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def _check_cap(size: int, cap: int, what: str):
    if size > cap:
        raise ResourceLimitExceeded(f"{what}: {size} stored terms exceed cap {cap}")


def vandermonde_power_expand(N: int, nu: int, cap: int = DEFAULT_CAP) -> dict[tuple[int, ...], int]:
    """Monomial expansion of ``prod_{i<j} (x_i - x_j)**nu``.

    Keys are exponent tuples ``(m_1, ..., m_N)``, values are integers.
    """
    if N < 2 or nu < 1:
        raise ValueError("need N >= 2 and nu >= 1")
    poly: dict[tuple[int, ...], int] = {(0,) * N: 1}
    binom = [(-1) ** r * comb(nu, r) for r in range(nu + 1)]
    for i, j in itertools.combinations(range(N), 2):
        nxt: dict[tuple[int, ...], int] = {}
        for mono, c in poly.items():
            for r, b in enumerate(binom):
                # (x_i - x_j)^nu = sum_r C(nu,r) (-1)^r x_i^(nu-r) x_j^r
                key = list(mono)
                key[i] += nu - r
                key[j] += r
                key = tuple(key)
                v = nxt.get(key, 0) + c * b
                if v:
                    nxt[key] = v
                else:
                    nxt.pop(key, None)
        _check_cap(len(nxt), cap, f"Vandermonde power N={N} nu={nu}")
        poly = nxt
    return poly


@dataclass(frozen=True, eq=False)
class CoefficientTensor:
    """Exact expansion amplitudes of the ground state.

    ``integers`` maps each sorted multi-index with a nonzero amplitude to the
    integer ``G_q``; values at unsorted indices follow by permutation
    (times the permutation sign when ``nu`` is odd).
    """

    spec: ModelSpec
    integers: dict[tuple[int, ...], int]
    norm_squared_pi: Fraction = field(default=None)

    def __post_init__(self):
        if self.norm_squared_pi is None:
            object.__setattr__(self, "norm_squared_pi", normalization_constant_squared(self.spec))

    def __eq__(self, other):
        if not isinstance(other, CoefficientTensor):
            return NotImplemented
        return (
            self.spec.N == other.spec.N
            and self.spec.nu == other.spec.nu
            and self.norm_squared_pi == other.norm_squared_pi
            and self.integers == other.integers
        )

    @property
    def D(self) -> int:
        return self.spec.D

    @property
    def scale(self) -> int:
        return 2**self.spec.M

    def __len__(self):
        return len(self.integers)

    def integer_part(self, q) -> int:
        """Signed ``G_q`` at an arbitrary multi-index."""
        q = tuple(q)
        key = tuple(sorted(q))
        g = self.integers.get(key, 0)
        if not g or self.spec.bosonic:
            return g
        return permutation_sign(q) * g

    def radical_factor(self, q) -> Fraction:
        """``K * 2**sum(q) / prod(q_k!)``; amplitude is ``G_q/2**M`` times its root."""
        return self.norm_squared_pi * Fraction(2 ** sum(q), prod(factorial(k) for k in q))

    def amplitude(self, q) -> Radical:
        g = self.integer_part(q)
        root = radical_from_sqrt(self.radical_factor(q))
        return Radical(root.coefficient * Fraction(g, self.scale), root.radicand) if g else Radical(Fraction(0))

    def entries(self):
        """Yield ``(q, amplitude)`` over every nonzero multi-index, sorted order."""
        for q in sorted(self.full_indices()):
            yield q, self.amplitude(q)

    def full_indices(self):
        for key in self.integers:
            yield from set(itertools.permutations(key))

    def norm_squared(self) -> Fraction:
        """Exact ``sum_q a_q**2`` over all multi-indices."""
        total = Fraction(0)
        for key, g in self.integers.items():
            total += multiplicity(key) * g * g * self.radical_factor(key)
        return total / (self.scale * self.scale)

    @cached_property
    def max_index(self) -> int:
        return max((max(k) for k in self.integers), default=0)


def multiplicity(key) -> int:
    """Number of distinct orderings of ``key``."""
    counts = Counter(key)
    return factorial(len(key)) // prod(factorial(c) for c in counts.values())


def estimated_entries(spec: ModelSpec) -> int:
    """Upper bound on the stored terms :func:`expansion_coefficients` needs.

    Largest of the Jastrow monomial count and the group-sorted partial tensor
    sizes, ignoring the degree constraints that make the true counts smaller.
    """
    N, D = spec.N, spec.D
    if spec.bosonic:
        groups = max(comb(D + k - 1, k) * comb(D + N - k - 1, N - k) for k in range(N + 1))
    else:
        groups = max(comb(D, k) * comb(D, N - k) for k in range(N + 1))
    return max(groups, comb(spec.M + N - 1, N - 1))


def expansion_coefficients(spec: ModelSpec, cap: int = DEFAULT_CAP, check: bool = True) -> CoefficientTensor:
    """Build the coefficient tensor by the monomial route.

    Expand the Jastrow factor in monomials, then map every variable's power to
    the Hermite basis one mode at a time. After ``k`` modes the partial tensor
    is (anti)symmetric within the converted modes and within the remaining
    ones, so only keys sorted inside each group are kept.
    """
    N, nu = spec.N, spec.nu
    fermion = not spec.bosonic
    _check_cap(estimated_entries(spec), cap, f"coefficient tensor N={N} nu={nu} (estimate)")
    mono = vandermonde_power_expand(N, nu, cap)
    if fermion:
        layer = {((), m): c for m, c in mono.items() if all(m[i] < m[i + 1] for i in range(N - 1))}
    else:
        layer = {((), m): c for m, c in mono.items() if all(m[i] <= m[i + 1] for i in range(N - 1))}
    del mono
    table = [monomial_to_hermite_scaled(d) for d in range(spec.D)]

    for step in range(N):
        nxt: dict = {}
        get = nxt.get
        for (a, b), v in layer.items():
            lo = a[-1] if a else 0
            if fermion and a:
                lo += 1
            prev = None
            for j, m in enumerate(b):
                if m == prev:
                    continue
                prev = m
                rest = b[:j] + b[j + 1 :]
                sv = -v if (fermion and j % 2) else v
                row = table[m]
                start = lo + ((m - lo) % 2)
                for q in range(start, m + 1, 2):
                    key = (a + (q,), rest)
                    nxt[key] = get(key, 0) + sv * row[q]
        layer = {k: c for k, c in nxt.items() if c}
        _check_cap(len(layer), cap, f"coefficient tensor N={N} nu={nu}, mode {step + 1}")
        log.debug("mode %d: %d partial entries", step + 1, len(layer))

    tensor = CoefficientTensor(spec, {a: c for (a, _), c in layer.items()})
    if check:
        norm = tensor.norm_squared()
        if norm != 1:
            raise ArithmeticError(f"coefficient tensor for {spec} has norm^2 {norm}, expected 1")
    return tensor
