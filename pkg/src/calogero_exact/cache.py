"""On-disk cache of exact coefficient tensors and RDMs, keyed by (N, nu[, p])."""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path

from .formats import rdm_from_json, rdm_to_json, tensor_from_json, tensor_to_json
from .rdm import ReducedDensityMatrix, assemble_rdm
from .wavefunction import DEFAULT_CAP, CoefficientTensor, ModelSpec, expansion_coefficients

ENV_VAR = "CALOGERO_EXACT_CACHE"

_NAME = re.compile(r"^(tensor|rdm)_N(\d+)_nu(\d+)(?:_p(\d+))?\.json$")


def resolve_cache_dir(flag: str | None) -> Path | None:
    """The ``--cache-dir`` flag wins over the environment variable."""
    value = flag or os.environ.get(ENV_VAR)
    return Path(value) if value else None


class Store:
    """Builds tensors and RDMs, reading and writing the cache when one is set."""

    def __init__(self, directory: Path | None = None, cap: int = DEFAULT_CAP):
        self.directory = Path(directory) if directory else None
        self.cap = cap

    def _path(self, kind: str, N: int, nu: int, p: int | None = None) -> Path:
        suffix = f"_p{p}" if p is not None else ""
        return self.directory / f"{kind}_N{N}_nu{nu}{suffix}.json"

    def _load(self, path: Path):
        if self.directory is None or not path.exists():
            return None
        with open(path) as fh:
            return json.load(fh)

    def _save(self, path: Path, data: dict):
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh, separators=(",", ":"))
        os.replace(tmp, path)

    def tensor(self, N: int, nu: int) -> CoefficientTensor:
        path = self._path("tensor", N, nu) if self.directory else None
        data = self._load(path) if path else None
        if data is not None:
            return tensor_from_json(data)
        tensor = expansion_coefficients(ModelSpec(N, nu), cap=self.cap)
        if path:
            self._save(path, tensor_to_json(tensor))
        return tensor

    def rdm(self, spec: ModelSpec) -> ReducedDensityMatrix:
        path = self._path("rdm", spec.N, spec.nu, spec.p) if self.directory else None
        data = self._load(path) if path else None
        if data is not None:
            return rdm_from_json(data)
        rdm = assemble_rdm(self.tensor(spec.N, spec.nu), spec.p)
        if path:
            self._save(path, rdm_to_json(rdm))
        return rdm

    def keys(self) -> list[tuple]:
        if self.directory is None or not self.directory.exists():
            return []
        out = []
        for f in sorted(self.directory.iterdir()):
            m = _NAME.match(f.name)
            if m:
                kind, N, nu, p = m.groups()
                out.append((kind, int(N), int(nu)) + ((int(p),) if p else ()))
        return sorted(out)

    def clear(self) -> int:
        if self.directory is None or not self.directory.exists():
            return 0
        n = 0
        for f in self.directory.iterdir():
            if _NAME.match(f.name):
                f.unlink()
                n += 1
        return n
