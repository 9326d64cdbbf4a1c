"""One-particle density on a grid, from the exact 1-RDM."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .exact import DEFAULT_DIGITS, to_real
from .hermite import hermite_functions
from .rdm import ReducedDensityMatrix

__all__ = ["DensityProfile", "count_peaks", "default_window", "density_at", "density_profile"]

PEAK_FLOOR = 1e-6


@dataclass(frozen=True)
class DensityProfile:
    grid: tuple
    values: tuple
    N: int
    nu: int

    def peaks(self, floor: float = PEAK_FLOOR) -> list:
        """Abscissae of strict interior local maxima above ``floor``."""
        v = self.values
        return [
            self.grid[i]
            for i in range(1, len(v) - 1)
            if v[i] > floor and v[i] > v[i - 1] and v[i] > v[i + 1]
        ]


def _numeric_rdm(rdm: ReducedDensityMatrix, digits: int):
    if rdm.p != 1:
        raise ValueError("the one-particle density needs the p = 1 reduced density matrix")
    return [((i, j), to_real(v, digits)) for (i, j), v in rdm.entries.items()]


def _density(entries, D, x, digits):
    psi = hermite_functions(D - 1, x, digits)
    with mpmath.workdps(digits + 5):
        total = mpmath.mpf(0)
        for (i, j), v in entries:
            term = v * psi[i] * psi[j]
            total += term if i == j else 2 * term
    return total


def density_at(rdm1: ReducedDensityMatrix, x, digits: int = DEFAULT_DIGITS):
    """``rho(x) = sum_ij rho_ij psi_i(x) psi_j(x)``."""
    return _density(_numeric_rdm(rdm1, digits), rdm1.D, x, digits)


def default_window(N: int, nu: int) -> float:
    """Half-width of the default grid: at least 6, wider at strong coupling.

    Outer density peaks sit near ``sqrt(nu)`` times the largest root of
    ``H_N``, which is below ``sqrt(N)``.
    """
    return max(6.0, float(int(mpmath.sqrt(nu * N)) + 4))


def density_profile(
    rdm1: ReducedDensityMatrix,
    x_min: float | None = None,
    x_max: float | None = None,
    points: int = 401,
    digits: int = 30,
) -> DensityProfile:
    half = default_window(rdm1.spec.N, rdm1.spec.nu)
    x_min = -half if x_min is None else x_min
    x_max = half if x_max is None else x_max
    if points < 2:
        raise ValueError("need at least two grid points")
    entries = _numeric_rdm(rdm1, digits)
    with mpmath.workdps(digits + 5):
        lo, hi = mpmath.mpf(x_min), mpmath.mpf(x_max)
        step = (hi - lo) / (points - 1)
        grid = tuple(lo + k * step for k in range(points))
    values = tuple(_density(entries, rdm1.D, x, digits) for x in grid)
    return DensityProfile(grid, values, rdm1.spec.N, rdm1.spec.nu)


def count_peaks(profile: DensityProfile, floor: float = PEAK_FLOOR) -> int:
    return len(profile.peaks(floor))
