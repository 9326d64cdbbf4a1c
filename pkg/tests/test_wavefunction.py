from fractions import Fraction
from math import factorial

import pytest

from calogero_exact.exact import Radical, radical_from_sqrt
from calogero_exact.wavefunction import (
    ModelSpec,
    ResourceLimitExceeded,
    estimated_entries,
    expansion_coefficients,
    ground_state_energy,
    multiplicity,
    normalization_constant_squared,
    permutation_sign,
    vandermonde_power_expand,
)


def test_model_spec_derived_quantities():
    s = ModelSpec(3, 4, 2)
    assert (s.D, s.M, s.dim) == (9, 12, 81)
    assert s.bosonic and s.statistics == "boson"
    assert ModelSpec(2, 3).statistics == "fermion"
    assert ModelSpec(2, 3).interaction_strength == 6


@pytest.mark.parametrize("bad", [(1, 2, 1), (2, 0, 1), (3, 2, 0), (3, 2, 3)])
def test_model_spec_validation(bad):
    with pytest.raises(ValueError):
        ModelSpec(*bad)


@pytest.mark.parametrize(
    "N, nu, energy",
    [(2, 2, Fraction(3)), (2, 3, Fraction(4)), (3, 2, Fraction(15, 2)), (4, 1, Fraction(8))],
)
def test_ground_state_energy(N, nu, energy):
    assert ground_state_energy(ModelSpec(N, nu)) == energy


def test_free_fermion_energy_is_filled_levels():
    # nu = 1 is N free fermions: sum_{k<N} (k + 1/2)
    for N in range(2, 7):
        assert ground_state_energy(ModelSpec(N, 1)) == sum(Fraction(2 * k + 1, 2) for k in range(N))


def test_normalization_constants():
    # C^2 pi^{N/2}: N=2 nu=2 -> 1/3, N=2 nu=3 -> 1/15
    assert normalization_constant_squared(ModelSpec(2, 2)) == Fraction(1, 3)
    assert normalization_constant_squared(ModelSpec(2, 3)) == Fraction(1, 15)
    # Mehta integral at nu = 1: 2^{N(N-1)/2} / prod j!
    for N in range(2, 6):
        ref = Fraction(2 ** (N * (N - 1) // 2), 1)
        for j in range(1, N + 1):
            ref /= factorial(j)
        assert normalization_constant_squared(ModelSpec(N, 1)) == ref


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((2, 0, 1)) == 1
    assert permutation_sign((1, 1, 2)) == 0


def test_vandermonde_expand_small():
    # (x0 - x1)^2
    assert vandermonde_power_expand(2, 2) == {(2, 0): 1, (1, 1): -2, (0, 2): 1}
    poly = vandermonde_power_expand(3, 2)
    assert sum(poly.values()) == 0
    assert all(sum(k) == 6 for k in poly)


def test_multiplicity():
    assert multiplicity((0, 0, 2)) == 3
    assert multiplicity((0, 1, 2)) == 6
    assert multiplicity((3, 3)) == 1


def test_n2_nu2_coefficients():
    t = expansion_coefficients(ModelSpec(2, 2))
    amp = {q: t.amplitude(q) for q in [(0, 0), (0, 2), (2, 0), (1, 1)]}
    assert amp[0, 0] == radical_from_sqrt(Fraction(1, 3))
    assert amp[0, 2] == amp[2, 0] == radical_from_sqrt(Fraction(1, 6))
    # the (1,1) amplitude is negative: the expansion of (x1 - x2)^2 forces it
    assert amp[1, 1] == -radical_from_sqrt(Fraction(1, 3))
    assert t.amplitude((1, 0)).is_zero


def test_fermion_antisymmetry():
    t = expansion_coefficients(ModelSpec(3, 3))
    for q in t.full_indices():
        swapped = (q[1], q[0], q[2])
        assert t.amplitude(swapped) == -t.amplitude(q)
    assert t.amplitude((1, 1, 4)).is_zero


@pytest.mark.parametrize("N, nu", [(2, 1), (2, 5), (2, 8), (3, 1), (3, 2), (3, 3), (3, 5), (4, 2), (4, 3), (5, 2)])
def test_normalized_exactly(N, nu):
    t = expansion_coefficients(ModelSpec(N, nu))
    assert t.norm_squared() == 1


def test_free_fermion_slater_determinant():
    # nu = 1: single Slater determinant of the lowest N orbitals
    t = expansion_coefficients(ModelSpec(3, 1))
    assert set(t.integers) == {(0, 1, 2)}
    assert len(list(t.entries())) == 6
    assert abs(t.amplitude((0, 1, 2))) == Radical.make(Fraction(1, 6), 6)


def test_indices_bounded_and_parity():
    spec = ModelSpec(3, 4)
    t = expansion_coefficients(spec)
    assert t.max_index <= spec.D - 1
    assert all((sum(q) - spec.M) % 2 == 0 and sum(q) <= spec.M for q, _ in t.entries())


def test_cap_raises_before_work():
    with pytest.raises(ResourceLimitExceeded):
        expansion_coefficients(ModelSpec(6, 10), cap=10_000)
    assert estimated_entries(ModelSpec(6, 10)) > 10_000
