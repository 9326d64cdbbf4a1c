"""Reduced density matrices as exact finite matrices in the Hermite basis."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

import mpmath

from .exact import ZERO, Radical, radical_add, radical_from_sqrt, radical_mul, to_real
from .wavefunction import CoefficientTensor, ModelSpec, multiplicity, permutation_sign

__all__ = [
    "Block",
    "ReducedDensityMatrix",
    "assemble_rdm",
    "flat_index",
    "front_indices",
    "parity_blocks",
    "partial_trace",
]


def flat_index(q, D: int) -> int:
    """1-based flat index ``1 + q_1 + D*q_2 + ... + D**(p-1)*q_p``."""
    i = 0
    for k, qk in enumerate(q):
        if not 0 <= qk < D:
            raise IndexError(f"index {qk} outside [0, {D - 1}]")
        i += qk * D**k
    return i + 1


def front_indices(i: int, D: int, p: int) -> tuple[int, ...]:
    """Inverse of :func:`flat_index` (takes the 1-based index)."""
    i -= 1
    out = []
    for _ in range(p):
        i, r = divmod(i, D)
        out.append(r)
    if i:
        raise IndexError("flat index out of range")
    return tuple(out)


@dataclass(frozen=True)
class Block:
    """One parity sector: 0-based flat ``indices`` and the dense exact sub-matrix."""

    parity: int
    indices: tuple[int, ...]
    matrix: tuple[tuple[Radical, ...], ...]

    @property
    def size(self) -> int:
        return len(self.indices)

    def trace(self) -> Fraction:
        return sum((self.matrix[k][k].coefficient for k in range(self.size)), Fraction(0))

    def to_mp(self, digits: int = 50) -> list[list]:
        return [[to_real(x, digits) for x in row] for row in self.matrix]


@dataclass(frozen=True, eq=False)
class ReducedDensityMatrix:
    """Exact symmetric ``D**p x D**p`` matrix stored sparsely.

    ``entries`` maps 0-based ``(i, j)`` with ``i <= j`` to nonzero radicals.
    """

    spec: ModelSpec
    entries: dict[tuple[int, int], Radical]

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def D(self) -> int:
        return self.spec.D

    @property
    def dim(self) -> int:
        return self.spec.dim

    def __getitem__(self, ij) -> Radical:
        i, j = ij
        if i > j:
            i, j = j, i
        return self.entries.get((i, j), ZERO)

    def __eq__(self, other):
        if not isinstance(other, ReducedDensityMatrix):
            return NotImplemented
        return self.spec == other.spec and self.entries == other.entries

    def to_dense(self) -> list[list[Radical]]:
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def trace(self) -> Fraction:
        total = Fraction(0)
        for i in range(self.dim):
            d = self[i, i]
            if d.radicand != 1:
                raise ArithmeticError(f"irrational diagonal entry {d}")
            total += d.coefficient
        return total

    def parity(self, i: int) -> int:
        return sum(front_indices(i + 1, self.D, self.p)) % 2

    def to_mp(self, digits: int = 50) -> mpmath.matrix:
        m = mpmath.matrix(self.dim, self.dim)
        for (i, j), v in self.entries.items():
            m[i, j] = m[j, i] = to_real(v, digits)
        return m


def _front_splits(key: tuple[int, ...], p: int):
    """Yield every ordered front ``p``-tuple drawn from ``key`` with the sorted rest."""
    n = len(key)
    seen = set()
    for pos in itertools.permutations(range(n), p):
        front = tuple(key[k] for k in pos)
        if front in seen:
            continue
        seen.add(front)
        chosen = set(pos)
        rest = tuple(key[k] for k in range(n) if k not in chosen)
        yield front, rest


def assemble_rdm(tensor: CoefficientTensor, p: int) -> ReducedDensityMatrix:
    """Contract the coefficient tensor over its last ``N - p`` slots.

    ``rho[f, f'] = sum_t a[f, t] a[f', t]``. The radical part of
    ``a[f, t] a[f', t]`` depends on ``f, f'`` only, so each entry is an exact
    integer sum times one radical.
    """
    spec = tensor.spec.with_p(p)
    N, D = spec.N, spec.D
    fermion = not spec.bosonic
    trailing_n = N - p

    # rows[t] holds (flat front index, signed G[f, t]) for sorted trailing t.
    rows: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
    for key, g in tensor.integers.items():
        for front, rest in _front_splits(key, p):
            sign = permutation_sign(front + rest) if fermion else 1
            rows[rest].append((flat_index(front, D) - 1, sign * g))

    top = factorial(D - 1) ** trailing_n
    sums: dict[tuple[int, int], int] = defaultdict(int)
    for t in sorted(rows):
        w = multiplicity(t) * 2 ** sum(t) * (top // prod(factorial(k) for k in t))
        row = sorted(rows[t])
        for a, (i, gi) in enumerate(row):
            wgi = w * gi
            for j, gj in row[a:]:
                sums[i, j] += wgi * gj

    prefactor = tensor.norm_squared_pi / (Fraction(tensor.scale) ** 2 * top)
    roots = {}

    def root(i):
        if i not in roots:
            f = front_indices(i + 1, D, p)
            roots[i] = radical_from_sqrt(Fraction(2 ** sum(f), prod(factorial(k) for k in f)))
        return roots[i]

    entries = {}
    for (i, j), s in sorted(sums.items()):
        if not s:
            continue
        if (sum(front_indices(i + 1, D, p)) - sum(front_indices(j + 1, D, p))) % 2:
            raise ArithmeticError(f"parity rule violated at ({i}, {j})")
        entries[i, j] = radical_mul(root(i), root(j)) * (prefactor * s)
    return ReducedDensityMatrix(spec, entries)


def partial_trace(rdm: ReducedDensityMatrix, k: int) -> ReducedDensityMatrix:
    """Trace out the last ``k`` of the ``p`` kept particles."""
    p = rdm.p
    if not 1 <= k < p:
        raise ValueError(f"need 1 <= k < p, got k={k}, p={p}")
    D = rdm.D
    spec = rdm.spec.with_p(p - k)
    keep = p - k

    def both_orders():
        for (i, j), v in rdm.entries.items():
            yield i, j, v
            if i != j:
                yield j, i, v

    acc: dict[tuple[int, int], Radical] = {}
    for i, j, v in both_orders():
        fi = front_indices(i + 1, D, p)
        fj = front_indices(j + 1, D, p)
        if fi[keep:] != fj[keep:]:
            continue
        a = flat_index(fi[:keep], D) - 1
        b = flat_index(fj[:keep], D) - 1
        if a <= b:
            acc[a, b] = radical_add(acc.get((a, b), ZERO), v)
    return ReducedDensityMatrix(spec, {ij: v for ij, v in sorted(acc.items()) if not v.is_zero})


def parity_blocks(rdm: ReducedDensityMatrix) -> list[Block]:
    """Even and odd sectors (by parity of the summed front indices), even first."""
    groups: dict[int, list[int]] = {0: [], 1: []}
    for i in range(rdm.dim):
        groups[rdm.parity(i)].append(i)
    blocks = []
    for par in (0, 1):
        idx = tuple(groups[par])
        if not idx:
            continue
        mat = tuple(tuple(rdm[i, j] for j in idx) for i in idx)
        blocks.append(Block(par, idx, mat))
    return blocks
