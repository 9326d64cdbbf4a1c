"""Exact reduced density matrices and entanglement spectra of the Calogero ground state."""

from .exact import MismatchedRadicand, Radical, radical_add, radical_from_sqrt, radical_mul, square_free_decompose, to_real
from .rdm import ReducedDensityMatrix, assemble_rdm, flat_index, parity_blocks, partial_trace
from .spectra import (
    DegenerateSpectrum,
    EntanglementSpectrum,
    asymptotic_entropies,
    asymptotic_occupancy,
    eigenvalues,
    jrw_subentropy,
    linear_entropy,
    von_neumann_entropy,
)
from .wavefunction import (
    CoefficientTensor,
    ModelSpec,
    ResourceLimitExceeded,
    expansion_coefficients,
    ground_state_energy,
    normalization_constant_squared,
)

__version__ = "0.1.0"
