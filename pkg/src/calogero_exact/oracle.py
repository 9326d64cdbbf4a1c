"""Slow, independent reference routes used to check the production path.

``quadrature_rdm`` integrates the defining RDM integral with tensor-product
Gauss-Hermite quadrature on the explicit wavefunction. ``epsilon_contraction_coefficients``
expands the Jastrow factor through the Hermite-determinant form of the
Vandermonde product, one permutation tuple at a time.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial, prod

import mpmath
import numpy as np

from .exact import to_real
from .hermite import linearize_product
from .wavefunction import CoefficientTensor, ModelSpec, normalization_constant_squared, permutation_sign

__all__ = [
    "EnumerationCapExceeded",
    "epsilon_contraction_coefficients",
    "gauss_hermite",
    "linearization_closed_form",
    "quadrature_rdm",
]

MAX_TRAILING = 3
ENUMERATION_CAP = 10**6


class EnumerationCapExceeded(RuntimeError):
    pass


def gauss_hermite(n: int, digits: int = 30):
    """Nodes and weights for ``int f(x) exp(-x**2) dx``, by Newton iteration.

    Runs the orthonormal three-term recurrence at ``digits`` precision and
    returns two lists of ``mpf`` in increasing node order.
    """
    with mpmath.workdps(digits + 10):
        pim4 = 1 / mpmath.root(mpmath.pi, 4)
        nodes, weights = [None] * n, [None] * n
        m = (n + 1) // 2
        z = mpmath.mpf(0)
        for i in range(m):
            # classic asymptotic starting guesses, largest root first
            if i == 0:
                z = mpmath.sqrt(2 * n + 1) - 1.85575 * (2 * n + 1) ** (-1 / 6)
            elif i == 1:
                z = z - 1.14 * n**0.426 / z
            elif i == 2:
                z = 1.86 * z - 0.86 * nodes[n - 1]
            elif i == 3:
                z = 1.91 * z - 0.91 * nodes[n - 2]
            else:
                z = 2 * z - nodes[n - i + 1]
            z = mpmath.mpf(z)
            tol = mpmath.mpf(10) ** (-(digits + 5))
            for _ in range(200):
                p1, p2 = pim4, mpmath.mpf(0)
                for j in range(1, n + 1):
                    p1, p2 = z * mpmath.sqrt(mpmath.mpf(2) / j) * p1 - mpmath.sqrt(mpmath.mpf(j - 1) / j) * p2, p1
                pp = mpmath.sqrt(2 * n) * p2
                dz = p1 / pp
                z -= dz
                if abs(dz) < tol:
                    break
            else:
                raise ArithmeticError(f"Gauss-Hermite Newton iteration stalled (n={n}, root {i})")
            nodes[n - 1 - i], nodes[i] = z, -z
            weights[n - 1 - i] = weights[i] = 2 / (pp * pp)
        if n % 2:
            nodes[n // 2] = mpmath.mpf(0)
    return nodes, weights


def _poly_hermite(kmax, x, lib):
    # h_k(x) = psi_k(x) * exp(x**2 / 2), by the normalized recurrence
    h = [lib["pim4"] * lib["one"](x)]
    if kmax >= 1:
        h.append(lib["sqrt"](2) * x * h[0])
    for k in range(1, kmax):
        # ratios as quotients of roots so the mp path never rounds through a float
        r = lib["sqrt"](k + 1)
        h.append(lib["sqrt"](2) / r * x * h[k] - lib["sqrt"](k) / r * h[k - 1])
    return h


def quadrature_rdm(spec: ModelSpec, nodes: int | None = None, digits: int | None = None):
    """RDM entries from the defining integral by Gauss-Hermite quadrature.

    With ``digits=None`` everything runs in numpy double precision and a
    ``D**p x D**p`` float array is returned; otherwise an ``mpmath.matrix``
    computed at ``digits``. ``nodes`` defaults to ``D``, the smallest order
    at which every integrand (polynomial times Gaussian) is integrated exactly.
    """
    N, nu, p = spec.N, spec.nu, spec.p
    if N - p > MAX_TRAILING:
        raise ValueError(f"quadrature oracle handles at most {MAX_TRAILING} traced particles")
    D = spec.D
    nodes = D if nodes is None else nodes
    if nodes < D:
        raise ValueError(f"need at least {D} nodes for exact integration, got {nodes}")
    gh_digits = 20 if digits is None else digits
    xs, ws = gauss_hermite(nodes, gh_digits)
    with mpmath.workdps(gh_digits + 10):
        c = mpmath.sqrt(to_real(normalization_constant_squared(spec), gh_digits + 10) / mpmath.pi ** (mpmath.mpf(N) / 2))
    if digits is None:
        return _quadrature_float(spec, [float(x) for x in xs], [float(w) for w in ws], float(c))
    return _quadrature_mp(spec, xs, ws, c, digits)


def _quadrature_float(spec, xs, ws, c):
    N, nu, p, D = spec.N, spec.nu, spec.p, spec.D
    xs, ws = np.asarray(xs), np.asarray(ws)
    n = len(xs)
    h = np.array(_poly_hermite(D - 1, xs, {"pim4": np.pi ** -0.25, "one": np.ones_like, "sqrt": np.sqrt}))
    front = np.array(list(itertools.product(range(n), repeat=p)))
    back = np.array(list(itertools.product(range(n), repeat=N - p)))
    fx, bx = xs[front], xs[back]
    fw = np.prod(ws[front], axis=1)
    bw = np.prod(ws[back], axis=1)
    # Phi[i, a]: product basis functions on the front grid; flat index i has
    # the first particle varying fastest
    basis = np.array(list(itertools.product(range(D), repeat=p)))[:, ::-1]
    phi = np.ones((len(basis), len(front)))
    for k in range(p):
        phi *= h[basis[:, k]][:, front[:, k]]
    coords = np.concatenate(
        [np.broadcast_to(fx[:, None, :], (len(front), len(back), p)), np.broadcast_to(bx[None, :, :], (len(front), len(back), N - p))],
        axis=2,
    )
    jastrow = np.ones((len(front), len(back)))
    for i, j in itertools.combinations(range(N), 2):
        jastrow *= (coords[:, :, i] - coords[:, :, j]) ** nu
    B = (phi * fw) @ (c * jastrow)
    return (B * bw) @ B.T


def _quadrature_mp(spec, xs, ws, c, digits):
    N, nu, p, D = spec.N, spec.nu, spec.p, spec.D
    n = len(xs)
    with mpmath.workdps(digits + 10):
        lib = {"pim4": 1 / mpmath.root(mpmath.pi, 4), "one": lambda x: mpmath.mpf(1), "sqrt": lambda v: mpmath.sqrt(mpmath.mpf(v))}
        h = [_poly_hermite(D - 1, x, lib) for x in xs]  # h[node][k]
        front = list(itertools.product(range(n), repeat=p))
        back = list(itertools.product(range(n), repeat=N - p))
        basis = [tuple(reversed(b)) for b in itertools.product(range(D), repeat=p)]
        B = [[mpmath.mpf(0)] * len(back) for _ in basis]
        for f in front:
            fw = prod((ws[a] for a in f), start=mpmath.mpf(1))
            phis = [fw * prod((h[a][b[k]] for k, a in enumerate(f)), start=mpmath.mpf(1)) for b in basis]
            for t_idx, t in enumerate(back):
                x = [xs[a] for a in f] + [xs[a] for a in t]
                jas = c
                for i, j in itertools.combinations(range(N), 2):
                    jas *= (x[i] - x[j]) ** nu
                for bi, ph in enumerate(phis):
                    B[bi][t_idx] += ph * jas
        bw = [prod((ws[a] for a in t), start=mpmath.mpf(1)) for t in back]
        m = mpmath.matrix(len(basis), len(basis))
        for i in range(len(basis)):
            for j in range(i, len(basis)):
                v = mpmath.fsum(B[i][t] * B[j][t] * bw[t] for t in range(len(back)))
                m[i, j] = m[j, i] = v
    return m


def linearization_closed_form(degrees) -> dict[int, int]:
    """``L_q`` for ``prod H_{k_i}`` from the explicit multi-factor sum.

    ``L_q = (1/q!) sum_r (-1)^{|r|} prod k_i! * m! / (prod r_i! prod (k_i-2r_i)! (s-|r|)!)``
    with ``m = sum(k_i - 2 r_i)`` and ``s = (sum(k) - q)/2``. Deliberately a
    direct enumeration, independent of the two-factor fold.
    """
    degrees = list(degrees)
    total = sum(degrees)
    out = {}
    kfact = prod(factorial(k) for k in degrees)
    for q in range(total % 2, total + 1, 2):
        s = (total - q) // 2
        acc = Fraction(0)
        for r in itertools.product(*(range(k // 2 + 1) for k in degrees)):
            rs = sum(r)
            if rs > s:
                continue
            m = sum(k - 2 * ri for k, ri in zip(degrees, r))
            den = prod(factorial(ri) for ri in r) * prod(factorial(k - 2 * ri) for k, ri in zip(degrees, r)) * factorial(s - rs)
            acc += Fraction((-1) ** rs * kfact * factorial(m), den)
        acc /= factorial(q)
        if acc:
            if acc.denominator != 1:
                raise ArithmeticError("non-integer linearization coefficient")
            out[q] = int(acc)
    return out


def epsilon_contraction_coefficients(spec: ModelSpec, cap: int = ENUMERATION_CAP) -> CoefficientTensor:
    """Coefficient tensor from the sum over ``nu``-tuples of permutations.

    Uses ``det[H_{j-1}(x_i)] = 2**(N(N-1)/2) * prod_{i<j} (x_j - x_i)``, hence a
    global sign ``(-1)**M`` relative to ``prod_{i<j} (x_i - x_j)**nu``.
    """
    N, nu = spec.N, spec.nu
    perms = list(itertools.permutations(range(N)))
    if len(perms) ** nu > cap:
        raise EnumerationCapExceeded(f"(N!)^nu = {len(perms) ** nu} exceeds {cap}")
    signs = [permutation_sign(s) for s in perms]
    lin_cache: dict[tuple[int, ...], dict[int, int]] = {}
    acc: dict[tuple[int, ...], int] = {}
    for choice in itertools.product(range(len(perms)), repeat=nu):
        sgn = prod(signs[c] for c in choice)
        per_var = []
        for k in range(N):
            degs = tuple(sorted(perms[c][k] for c in choice))
            if degs not in lin_cache:
                lin_cache[degs] = linearize_product(degs)
            per_var.append(lin_cache[degs].items())
        for combo in itertools.product(*per_var):
            q = tuple(qc[0] for qc in combo)
            acc[q] = acc.get(q, 0) + sgn * prod(qc[1] for qc in combo)
    sign = -1 if spec.M % 2 else 1
    fermion = not spec.bosonic
    integers = {}
    for q, x in acc.items():
        if not x:
            continue
        if fermion and any(q[i] >= q[i + 1] for i in range(N - 1)):
            continue
        if not fermion and any(q[i] > q[i + 1] for i in range(N - 1)):
            continue
        integers[q] = sign * x * prod(factorial(k) for k in q)
    return CoefficientTensor(spec, integers)
