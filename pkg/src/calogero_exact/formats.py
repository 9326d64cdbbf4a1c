"""JSON and CSV layouts for tensors, RDMs, spectra and densities."""

from __future__ import annotations

import io
import json
from fractions import Fraction

import mpmath

from .exact import Radical, to_real
from .rdm import ReducedDensityMatrix, front_indices
from .wavefunction import CoefficientTensor, ModelSpec

TENSOR_FORMAT = "calogero-exact/tensor"
RDM_FORMAT = "calogero-exact/rdm"
FORMAT_VERSION = 1


def fmt(x, digits: int) -> str:
    """Deterministic decimal string for an ``mpf`` (or ``None`` -> empty)."""
    if x is None:
        return ""
    return mpmath.nstr(x, digits, min_fixed=-3, max_fixed=3, strip_zeros=False)


def csv_header(N, nu, p, digits) -> str:
    return f"# calogero-exact N={N} nu={nu} p={p} digits={digits}\n"


def tensor_to_json(tensor: CoefficientTensor) -> dict:
    spec = tensor.spec
    k = tensor.norm_squared_pi
    return {
        "format": TENSOR_FORMAT,
        "version": FORMAT_VERSION,
        "N": spec.N,
        "nu": spec.nu,
        "scale_log2": spec.M,
        "norm_squared_pi": [str(k.numerator), str(k.denominator)],
        "radical": "a_q = integer / 2**scale_log2 * sqrt(norm_squared_pi * 2**sum(q) / prod(q_k!))",
        "symmetry": "symmetric" if spec.bosonic else "antisymmetric",
        "records": [{"q": list(q), "integer": str(g)} for q, g in sorted(tensor.integers.items())],
    }


def tensor_from_json(data: dict) -> CoefficientTensor:
    if data.get("format") != TENSOR_FORMAT:
        raise ValueError("not a coefficient-tensor file")
    spec = ModelSpec(data["N"], data["nu"])
    num, den = data["norm_squared_pi"]
    ints = {tuple(r["q"]): int(r["integer"]) for r in data["records"]}
    return CoefficientTensor(spec, ints, Fraction(int(num), int(den)))


def rdm_to_json(rdm: ReducedDensityMatrix) -> dict:
    spec = rdm.spec
    return {
        "format": RDM_FORMAT,
        "version": FORMAT_VERSION,
        "N": spec.N,
        "nu": spec.nu,
        "p": spec.p,
        "D": spec.D,
        "index": "i = 1 + q_1 + D*q_2 + ... + D**(p-1)*q_p; upper triangle only",
        "entries": [
            {"i": i + 1, "j": j + 1, "value": v.to_triple()} for (i, j), v in sorted(rdm.entries.items())
        ],
    }


def rdm_from_json(data: dict) -> ReducedDensityMatrix:
    if data.get("format") != RDM_FORMAT:
        raise ValueError("not a reduced-density-matrix file")
    spec = ModelSpec(data["N"], data["nu"], data["p"])
    entries = {(e["i"] - 1, e["j"] - 1): Radical.from_triple(e["value"]) for e in data["entries"]}
    return ReducedDensityMatrix(spec, entries)


def rdm_text(rdm: ReducedDensityMatrix, digits: int = 12) -> str:
    """Human-readable dense dump, one matrix row per line."""
    out = io.StringIO()
    spec = rdm.spec
    out.write(csv_header(spec.N, spec.nu, spec.p, digits))
    for i in range(rdm.dim):
        row = [fmt(to_real(rdm[i, j], digits), digits) for j in range(rdm.dim)]
        out.write(" ".join(row) + "\n")
    return out.getvalue()


def rdm_exact_text(rdm: ReducedDensityMatrix) -> str:
    out = io.StringIO()
    for (i, j), v in sorted(rdm.entries.items()):
        fi = front_indices(i + 1, rdm.D, rdm.p)
        fj = front_indices(j + 1, rdm.D, rdm.p)
        out.write(f"{i + 1} {j + 1} {list(fi)} {list(fj)} {v}\n")
    return out.getvalue()


def spectrum_record(spec: ModelSpec, spectrum, S, L, Q) -> dict:
    d = spectrum.precision_digits
    return {
        "N": spec.N,
        "nu": spec.nu,
        "p": spec.p,
        "digits": d,
        "eigenvalues": [fmt(x, d) for x in spectrum.eigenvalues],
        "S": fmt(S, d),
        "L": fmt(L, d),
        "Q": None if Q is None else fmt(Q, d),
        "degeneracy_flag": spectrum.is_degenerate(),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def write_csv(columns: list[str], rows, header_lines: list[str]) -> str:
    out = io.StringIO()
    for line in header_lines:
        out.write(line if line.endswith("\n") else line + "\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(row) + "\n")
    return out.getvalue()
