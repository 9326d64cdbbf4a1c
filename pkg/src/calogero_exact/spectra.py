"""Entanglement spectra and entropies of reduced density matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

import gmpy2
import mpmath

from .exact import DEFAULT_DIGITS
from .rdm import ReducedDensityMatrix, parity_blocks

__all__ = [
    "ConvergenceError",
    "DegenerateSpectrum",
    "EntanglementSpectrum",
    "S3_ASYMPTOTE",
    "asymptotic_entropies",
    "asymptotic_occupancy",
    "eigenvalues",
    "jacobi_eigh",
    "jrw_subentropy",
    "linear_entropy",
    "von_neumann_entropy",
]

GUARD_DIGITS = 10
MAX_SWEEPS = 100

# Quoted strong-coupling entropy for N = 3, a harmonic-approximation result
# this package does not rederive.
S3_ASYMPTOTE = "1.87494"


class ConvergenceError(ArithmeticError):
    """Jacobi sweeps hit the cap before the off-diagonal part was small enough."""


class DegenerateSpectrum(ArithmeticError):
    """Two retained eigenvalues are closer than the gap tolerance."""


def _to_mpfr(x):
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    sign, man, exp, _ = x._mpf_
    if not man:
        return gmpy2.mpfr(0)
    v = gmpy2.mul_2exp(gmpy2.mpfr(man), exp)
    return -v if sign else v


def _to_mpf(x):
    if not x:
        return mpmath.mpf(0)
    man, exp = x.as_mantissa_exp()
    return mpmath.mpf((int(man), int(exp)))


def jacobi_eigh(a, digits: int = DEFAULT_DIGITS, tol=None, vectors: bool = False):
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    ``a`` is a square list of lists of numbers mpmath can convert. Returns the
    eigenvalues (final diagonal, unsorted) as ``mpf`` and, if ``vectors`` is
    set, the eigenvectors as the columns of a list-of-lists matrix. Sweeps
    stop once the off-diagonal Frobenius norm is below ``tol`` (default
    ``10**-digits`` times the sum of absolute diagonal entries).
    """
    n = len(a)
    bits = int((digits + GUARD_DIGITS) * 3.33) + 8
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        A = [[_to_mpfr(x) for x in row] for row in a]
        zero, one = gmpy2.mpfr(0), gmpy2.mpfr(1)
        V = [[one if i == j else zero for j in range(n)] for i in range(n)] if vectors else None
        if tol is None:
            scale = sum(abs(A[i][i]) for i in range(n)) or one
            tol = gmpy2.mpfr(10) ** (-digits) * scale
        else:
            tol = _to_mpfr(tol)
        tol2 = tol * tol
        skip = tol / max(n, 1)

        def off2():
            return 2 * sum(A[i][j] * A[i][j] for i in range(n) for j in range(i + 1, n))

        sweeps = 0
        while off2() > tol2:
            if sweeps >= MAX_SWEEPS:
                raise ConvergenceError(f"no convergence after {MAX_SWEEPS} sweeps (n={n})")
            sweeps += 1
            for p in range(n - 1):
                Ap = A[p]
                for q in range(p + 1, n):
                    apq = Ap[q]
                    if abs(apq) <= skip:
                        continue
                    Aq = A[q]
                    theta = (Aq[q] - Ap[p]) / (2 * apq)
                    t = one / (abs(theta) + gmpy2.sqrt(theta * theta + 1))
                    if theta < 0:
                        t = -t
                    c = one / gmpy2.sqrt(t * t + 1)
                    s = t * c
                    Ap[p] -= t * apq
                    Aq[q] += t * apq
                    Ap[q] = Aq[p] = zero
                    for k in range(n):
                        if k == p or k == q:
                            continue
                        Ak = A[k]
                        akp, akq = Ak[p], Ak[q]
                        Ak[p] = Ap[k] = c * akp - s * akq
                        Ak[q] = Aq[k] = s * akp + c * akq
                    if V is not None:
                        for Vk in V:
                            vkp, vkq = Vk[p], Vk[q]
                            Vk[p] = c * vkp - s * vkq
                            Vk[q] = s * vkp + c * vkq
    with mpmath.workdps(digits + GUARD_DIGITS):
        evals = [_to_mpf(A[i][i]) for i in range(n)]
        if vectors:
            return evals, [[_to_mpf(v) for v in row] for row in V]
    return evals


@dataclass(frozen=True)
class EntanglementSpectrum:
    """Descending eigenvalues of an RDM at a fixed working precision."""

    eigenvalues: tuple
    precision_digits: int = DEFAULT_DIGITS
    source: tuple = ()
    multiplicity_tolerance: mpmath.mpf = field(default=None)

    def __post_init__(self):
        if self.multiplicity_tolerance is None:
            object.__setattr__(
                self, "multiplicity_tolerance", mpmath.mpf(10) ** (-(self.precision_digits // 2))
            )

    @property
    def epsilon(self):
        return mpmath.mpf(10) ** (-(self.precision_digits - 5))

    def __len__(self):
        return len(self.eigenvalues)

    def __getitem__(self, k):
        return self.eigenvalues[k]

    def total(self):
        with mpmath.workdps(self.precision_digits + GUARD_DIGITS):
            return mpmath.fsum(self.eigenvalues)

    def max_clamp(self):
        """Largest amount by which an eigenvalue sits below zero (0 if none)."""
        return max((-x for x in self.eigenvalues if x < 0), default=mpmath.mpf(0))

    def multiplicities(self) -> list[tuple]:
        """``(value, count)`` groups of eigenvalues within the multiplicity tolerance."""
        groups: list[list] = []
        for x in self.eigenvalues:
            if groups and abs(groups[-1][-1] - x) <= self.multiplicity_tolerance:
                groups[-1].append(x)
            else:
                groups.append([x])
        return [(g[0], len(g)) for g in groups]

    def is_degenerate(self) -> bool:
        return any(c > 1 for _, c in self.multiplicities())


def eigenvalues(rdm: ReducedDensityMatrix, digits: int = DEFAULT_DIGITS) -> EntanglementSpectrum:
    """Diagonalize each parity block with :func:`jacobi_eigh` and merge."""
    vals = []
    for block in parity_blocks(rdm):
        vals.extend(jacobi_eigh(block.to_mp(digits + GUARD_DIGITS), digits))
    vals.sort(reverse=True)
    spec = rdm.spec
    return EntanglementSpectrum(tuple(vals), digits, (spec.N, spec.nu, spec.p))


def _clamped(spectrum: EntanglementSpectrum):
    return [x if x > 0 else mpmath.mpf(0) for x in spectrum.eigenvalues]


def von_neumann_entropy(spectrum: EntanglementSpectrum):
    """``-sum lambda log2 lambda`` in bits, with ``0 log 0 = 0``."""
    with mpmath.workdps(spectrum.precision_digits + GUARD_DIGITS):
        return -mpmath.fsum(x * mpmath.log(x, 2) for x in _clamped(spectrum) if x > 0)


def linear_entropy(spectrum: EntanglementSpectrum):
    with mpmath.workdps(spectrum.precision_digits + GUARD_DIGITS):
        return 1 - mpmath.fsum(x * x for x in spectrum.eigenvalues)


def jrw_subentropy(spectrum: EntanglementSpectrum, gap_tolerance=None, zero_threshold=None):
    """Jozsa-Robb-Wootters sub-entropy in bits.

    Eigenvalues at or below ``zero_threshold`` (default the spectrum's
    epsilon) are dropped first. Raises :class:`DegenerateSpectrum` when two of
    the remaining eigenvalues are closer than ``gap_tolerance`` (default
    ``10**-(digits/2)``), where the formula is singular.
    """
    digits = spectrum.precision_digits
    with mpmath.workdps(digits + GUARD_DIGITS):
        if gap_tolerance is None:
            gap_tolerance = mpmath.mpf(10) ** (-(digits // 2))
        if zero_threshold is None:
            zero_threshold = spectrum.epsilon
        lam = sorted((x for x in spectrum.eigenvalues if x > zero_threshold), reverse=True)
        for a, b in zip(lam, lam[1:]):
            if a - b < gap_tolerance:
                raise DegenerateSpectrum(
                    f"eigenvalues {mpmath.nstr(a, 12)} and {mpmath.nstr(b, 12)} closer than "
                    f"{mpmath.nstr(gap_tolerance, 3)}"
                )
        total = mpmath.mpf(0)
        for k, lk in enumerate(lam):
            weight = mpmath.mpf(1)
            for j, lj in enumerate(lam):
                if j != k:
                    weight *= lk / (lk - lj)
            total += weight * lk * mpmath.log(lk, 2)
        return -total


def asymptotic_occupancy(k: int, digits: int = DEFAULT_DIGITS):
    """Strong-coupling N = 2 occupancy of the doubly degenerate level ``k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    with mpmath.workdps(digits + GUARD_DIGITS):
        r2 = mpmath.sqrt(2)
        return 2 * r2 * (3 - 2 * r2) * (17 - 12 * r2) ** k


def asymptotic_entropies(digits: int = DEFAULT_DIGITS):
    """``(S_2, L_2, S_3)`` strong-coupling limits; ``S_3`` is a quoted constant."""
    with mpmath.workdps(digits + GUARD_DIGITS):
        r2 = mpmath.sqrt(2)
        s2 = 3 * mpmath.log(3 + 2 * r2, 2) / (2 * r2) - mpmath.mpf(3) / 2
        l2 = 1 - r2 / 3
        s3 = mpmath.mpf(S3_ASYMPTOTE)
    return s2, l2, s3
