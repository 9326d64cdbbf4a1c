"""Data series behind each figure, as CSV-ready tables."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath

from .cache import Store
from .density import default_window, density_profile
from .formats import fmt
from .spectra import (
    DegenerateSpectrum,
    asymptotic_entropies,
    asymptotic_occupancy,
    eigenvalues,
    jrw_subentropy,
    linear_entropy,
    von_neumann_entropy,
)
from .wavefunction import ModelSpec, estimated_entries

log = logging.getLogger(__name__)

FIGURES = ("fig1", "fig2a", "fig2b", "fig3", "fig4a", "fig4b", "fig5a", "fig5b", "fig6")

DENSITY_NS = (1, 2, 3, 20)


@dataclass
class FigureData:
    name: str
    columns: list[str]
    rows: list[list[str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    partial: bool = False
    N: str = ""
    nu: str = ""


@dataclass(frozen=True)
class Point:
    N: int
    nu: int
    p: int
    digits: int
    cache_dir: str | None
    cap: int


def compute_point(pt: Point) -> dict:
    """Spectrum and entropies of one (N, nu, p); ``Q`` is None when degenerate."""
    store = Store(pt.cache_dir, pt.cap)
    spec = ModelSpec(pt.N, pt.nu, pt.p)
    rdm = store.rdm(spec)
    spectrum = eigenvalues(rdm, pt.digits)
    try:
        q = jrw_subentropy(spectrum)
    except DegenerateSpectrum:
        q = None
    return {
        "spec": spec,
        "spectrum": spectrum,
        "S": von_neumann_entropy(spectrum),
        "L": linear_entropy(spectrum),
        "Q": q,
    }


def run_points(points: list[Point], workers: int = 1) -> list[dict]:
    """Evaluate points in order; results do not depend on ``workers``."""
    if workers <= 1 or len(points) <= 1:
        return [compute_point(pt) for pt in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(compute_point, points))


class FigureBuilder:
    def __init__(self, digits=50, store: Store | None = None, workers=1, n_max=None, points=401):
        self.digits = digits
        self.store = store or Store()
        self.workers = workers
        self.n_max = n_max
        self.points = points

    def _pt(self, N, nu):
        d = str(self.store.directory) if self.store.directory else None
        return Point(N, nu, 1, self.digits, d, self.store.cap)

    def _within_cap(self, N, nu):
        return estimated_entries(ModelSpec(N, nu)) <= self.store.cap

    def build(self, name: str) -> FigureData:
        if name not in FIGURES:
            raise ValueError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
        return getattr(self, name)()

    def _sweep_n2(self, default_max):
        n_max = self.n_max or default_max
        ns = list(range(1, n_max + 1))
        return ns, run_points([self._pt(2, 2 * n) for n in ns], self.workers)

    def fig1(self):
        ns, res = self._sweep_n2(50)
        d = self.digits
        a0, a1 = asymptotic_occupancy(0, d), asymptotic_occupancy(1, d)
        fig = FigureData(
            "fig1",
            ["inv_nu", "n", "lambda1", "lambda2", "lambda3", "lambda4", "asymptote_12", "asymptote_34"],
            N="2",
            nu=f"2..{2 * ns[-1]}",
        )
        for n, r in zip(ns, res):
            lam = list(r["spectrum"].eigenvalues) + [None] * 4
            with mpmath.workdps(d):
                inv = mpmath.mpf(1) / (2 * n)
            fig.rows.append([fmt(inv, d), str(n)] + [fmt(x, d) for x in lam[:4]] + [fmt(a0, d), fmt(a1, d)])
        return fig

    def _entropy_vs_n(self, name, N, key, asym, default_max):
        n_max = self.n_max or default_max
        ns = list(range(1, n_max + 1))
        res = run_points([self._pt(N, 2 * n) for n in ns], self.workers)
        d = self.digits
        label = {"S": "S", "L": "L"}[key]
        fig = FigureData(name, ["n", "nu", label, f"{label}_asymptote"], N=str(N), nu=f"2..{2 * ns[-1]}")
        for n, r in zip(ns, res):
            fig.rows.append([str(n), str(2 * n), fmt(r[key], d), fmt(asym, d)])
        return fig

    def fig2a(self):
        s2, _, _ = asymptotic_entropies(self.digits)
        return self._entropy_vs_n("fig2a", 2, "S", s2, 50)

    def fig2b(self):
        _, l2, _ = asymptotic_entropies(self.digits)
        return self._entropy_vs_n("fig2b", 2, "L", l2, 50)

    def fig4a(self):
        _, _, s3 = asymptotic_entropies(self.digits)
        return self._entropy_vs_n("fig4a", 3, "S", s3, 20)

    def _density(self, name, N):
        ns = DENSITY_NS if self.n_max is None else tuple(n for n in DENSITY_NS if n <= self.n_max)
        half = max(default_window(N, 2 * n) for n in ns)
        digits = min(self.digits, 20)
        profiles = [
            density_profile(self.store.rdm(ModelSpec(N, 2 * n)), -half, half, self.points, digits) for n in ns
        ]
        fig = FigureData(name, ["x"] + [f"rho_n{n}" for n in ns], N=str(N), nu=",".join(str(2 * n) for n in ns))
        for k, x in enumerate(profiles[0].grid):
            fig.rows.append([fmt(x, 8)] + [fmt(pr.values[k], 15) for pr in profiles])
        fig.notes.append("peaks " + " ".join(f"n{n}={len(pr.peaks())}" for n, pr in zip(ns, profiles)))
        return fig

    def fig3(self):
        return self._density("fig3", 2)

    def fig4b(self):
        return self._density("fig4b", 3)

    def _multi_n(self, name, key):
        n_max = self.n_max or 8
        halves = list(range(1, n_max + 1))
        fig = FigureData(name, ["nu_half", "nu"] + [f"{key}_N{N}" for N in (2, 3, 4, 5)], N="2..5")
        columns = {}
        for N in (2, 3, 4, 5):
            todo = [h for h in halves if self._within_cap(N, 2 * h)]
            if len(todo) < len(halves):
                fig.partial = True
                reached = f"nu<={2 * todo[-1]}" if todo else "none"
                fig.notes.append(f"N={N} stopped at resource cap {self.store.cap}: reached {reached}")
                log.warning("%s: N=%d sweep stopped at the resource cap (%s)", name, N, reached)
            res = run_points([self._pt(N, 2 * h) for h in todo], self.workers)
            columns[N] = {h: r[key] for h, r in zip(todo, res)}
        fig.nu = f"2..{2 * halves[-1]}"
        d = self.digits
        for h in halves:
            fig.rows.append([str(h), str(2 * h)] + [fmt(columns[N].get(h), d) for N in (2, 3, 4, 5)])
        return fig

    def fig5a(self):
        return self._multi_n("fig5a", "S")

    def fig5b(self):
        fig = self._multi_n("fig5b", "Q")
        fig.notes.append("empty Q cells: spectrum degenerate within the gap tolerance")
        return fig

    def fig6(self):
        n_max = self.n_max or 15
        ns = list(range(1, n_max + 1))
        pts = [self._pt(2, 2 * n) for n in ns] + [self._pt(2, 2 * n + 1) for n in ns]
        res = run_points(pts, self.workers)
        bos, fer = res[: len(ns)], res[len(ns) :]
        d = self.digits
        fig = FigureData("fig6", ["n", "S_boson", "S_fermion", "difference"], N="2", nu=f"2..{2 * ns[-1] + 1}")
        for n, b, f in zip(ns, bos, fer):
            with mpmath.workdps(d + 10):
                diff = b["S"] - f["S"]
            fig.rows.append([str(n), fmt(b["S"], d), fmt(f["S"], d), fmt(diff, d)])
        return fig
