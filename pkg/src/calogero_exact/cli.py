"""Command-line front end.

Exit codes: 0 ok, 2 resource cap exceeded, 3 JRW sub-entropy undefined for a
degenerate spectrum (record still written, ``Q`` null), 4 figure data only
partially computed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .cache import Store, resolve_cache_dir
from .density import count_peaks, density_profile
from .exact import DEFAULT_DIGITS
from .figures import FIGURES, FigureBuilder, Point, run_points
from .formats import csv_header, fmt, rdm_exact_text, rdm_text, rdm_to_json, spectrum_record, write_csv
from .wavefunction import DEFAULT_CAP, ModelSpec, ResourceLimitExceeded, ground_state_energy

log = logging.getLogger("calogero_exact")

EXIT_OK = 0
EXIT_CAP = 2
EXIT_DEGENERATE = 3
EXIT_PARTIAL = 4


@dataclass
class RunConfig:
    command: str
    N: int | None = None
    nu: list[int] | None = None
    p: int = 1
    digits: int = DEFAULT_DIGITS
    format: str = "json"
    output: Path | None = None
    cache_dir: Path | None = None
    workers: int = 1
    cap: int = DEFAULT_CAP

    @property
    def store(self) -> Store:
        return Store(self.cache_dir, self.cap)


def parse_nu(text: str) -> list[int]:
    """``"4"``, ``"2:10"`` or ``"2:10:2"`` (inclusive) to a list of integers."""
    parts = text.split(":")
    try:
        nums = [int(x) for x in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"nu must be an integer or start:stop[:step], got {text!r}")
    if len(nums) == 1:
        values = nums
    elif len(nums) in (2, 3):
        step = nums[2] if len(nums) == 3 else 1
        if step < 1:
            raise argparse.ArgumentTypeError("nu step must be positive")
        values = list(range(nums[0], nums[1] + 1, step))
    else:
        raise argparse.ArgumentTypeError(f"bad nu range {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("nu values must be integers >= 1")
    return values


def _emit(text: str, output: Path | None):
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def cmd_spectrum(cfg: RunConfig) -> int:
    points = [Point(cfg.N, nu, cfg.p, cfg.digits, str(cfg.cache_dir) if cfg.cache_dir else None, cfg.cap) for nu in cfg.nu]
    try:
        results = run_points(points, cfg.workers)
    except ResourceLimitExceeded as exc:
        log.error("%s", exc)
        return EXIT_CAP
    records = [spectrum_record(r["spec"], r["spectrum"], r["S"], r["L"], r["Q"]) for r in results]
    if cfg.format == "csv":
        d = cfg.digits
        rows = [
            [str(rec["nu"]), rec["S"], rec["L"], rec["Q"] or "", str(rec["degeneracy_flag"]).lower(), " ".join(rec["eigenvalues"])]
            for rec in records
        ]
        nu = ",".join(str(v) for v in cfg.nu)
        text = write_csv(["nu", "S", "L", "Q", "degenerate", "eigenvalues"], rows, [csv_header(cfg.N, nu, cfg.p, d)])
    else:
        text = "".join(json.dumps(rec) + "\n" for rec in records)
    _emit(text, cfg.output)
    if any(rec["Q"] is None for rec in records):
        log.warning("JRW sub-entropy undefined for a degenerate spectrum; Q written as null")
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_energy(cfg: RunConfig) -> int:
    lines = []
    for nu in cfg.nu:
        e = ground_state_energy(ModelSpec(cfg.N, nu))
        if cfg.format == "json":
            lines.append(json.dumps({"N": cfg.N, "nu": nu, "energy": str(e)}) + "\n")
        else:
            lines.append(f"{e}\n")
    _emit("".join(lines), cfg.output)
    return EXIT_OK


def cmd_density(cfg: RunConfig, x_min, x_max, points) -> int:
    if len(cfg.nu) != 1:
        raise SystemExit("density takes a single nu")
    nu = cfg.nu[0]
    try:
        rdm = cfg.store.rdm(ModelSpec(cfg.N, nu, 1))
    except ResourceLimitExceeded as exc:
        log.error("%s", exc)
        return EXIT_CAP
    digits = min(cfg.digits, 30)
    prof = density_profile(rdm, x_min, x_max, points, digits)
    rows = [[fmt(x, 10), fmt(v, digits)] for x, v in zip(prof.grid, prof.values)]
    text = write_csv(["x", "rho"], rows, [csv_header(cfg.N, nu, 1, digits), f"# peaks={count_peaks(prof)}"])
    _emit(text, cfg.output)
    return EXIT_OK


def cmd_rdm(cfg: RunConfig) -> int:
    if len(cfg.nu) != 1:
        raise SystemExit("rdm takes a single nu")
    try:
        rdm = cfg.store.rdm(ModelSpec(cfg.N, cfg.nu[0], cfg.p))
    except ResourceLimitExceeded as exc:
        log.error("%s", exc)
        return EXIT_CAP
    if cfg.format == "json":
        text = json.dumps(rdm_to_json(rdm)) + "\n"
    elif cfg.format == "exact":
        text = rdm_exact_text(rdm)
    else:
        text = rdm_text(rdm, min(cfg.digits, 20))
    _emit(text, cfg.output)
    return EXIT_OK


def cmd_figure(cfg: RunConfig, name: str, n_max: int | None, points: int) -> int:
    builder = FigureBuilder(cfg.digits, cfg.store, cfg.workers, n_max, points)
    try:
        fig = builder.build(name)
    except ResourceLimitExceeded as exc:
        log.error("%s", exc)
        return EXIT_CAP
    header = [f"# calogero-exact N={fig.N} nu={fig.nu} p=1 digits={cfg.digits}", f"# figure={fig.name}"]
    header += [f"# {note}" for note in fig.notes]
    if cfg.format == "json":
        text = json.dumps({"figure": fig.name, "N": fig.N, "nu": fig.nu, "digits": cfg.digits,
                           "notes": fig.notes, "columns": fig.columns, "rows": fig.rows}) + "\n"
    else:
        text = write_csv(fig.columns, fig.rows, header)
    _emit(text, cfg.output)
    if fig.partial:
        log.warning("%s: partial data written (resource cap)", name)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_cache(cfg: RunConfig, action: str) -> int:
    store = cfg.store
    if store.directory is None:
        log.error("no cache directory: pass --cache-dir or set CALOGERO_EXACT_CACHE")
        return 1
    if action == "clear":
        n = store.clear()
        print(f"removed {n} cache files")
        return EXIT_OK
    for key in store.keys():
        kind, N, nu, *p = key
        print(f"{kind} N={N} nu={nu}" + (f" p={p[0]}" if p else ""))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="working precision in decimal digits")
    common.add_argument("--cache-dir", type=Path, default=None, help="tensor/RDM cache (overrides $CALOGERO_EXACT_CACHE)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max stored terms per instance")
    common.add_argument("--output", "-o", type=Path, default=None)
    common.add_argument("-v", "--verbose", action="count", default=0)

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--N", type=int, required=True, help="particle number")
    model.add_argument("--nu", type=parse_nu, required=True, help="coupling exponent: 4, 2:20 or 2:20:2")

    parser = argparse.ArgumentParser(prog="calogero-exact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common, model], help="entanglement spectrum and entropies")
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--format", choices=["json", "csv"], default="json")

    en = sub.add_parser("energy", parents=[common, model], help="exact ground-state energy")
    en.add_argument("--format", choices=["json", "text"], default="text")

    de = sub.add_parser("density", parents=[common, model], help="one-particle density as CSV")
    de.add_argument("--points", type=int, default=401)
    de.add_argument("--x-min", type=float, default=None)
    de.add_argument("--x-max", type=float, default=None)

    rd = sub.add_parser("rdm", parents=[common, model], help="exact reduced density matrix")
    rd.add_argument("--p", type=int, default=1)
    rd.add_argument("--format", choices=["json", "text", "exact"], default="json")

    fi = sub.add_parser("figure", parents=[common], help="data behind a figure")
    fi.add_argument("name", choices=FIGURES)
    fi.add_argument("--n-max", type=int, default=None, help="largest n (or nu/2) in the sweep")
    fi.add_argument("--points", type=int, default=401, help="grid points for density figures")
    fi.add_argument("--format", choices=["csv", "json"], default="csv")

    ca = sub.add_parser("cache", parents=[common], help="inspect or clear the cache")
    ca.add_argument("action", choices=["list", "clear"])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    cfg = RunConfig(
        command=args.command,
        N=getattr(args, "N", None),
        nu=getattr(args, "nu", None),
        p=getattr(args, "p", 1),
        digits=args.digits,
        format=getattr(args, "format", "json"),
        output=args.output,
        cache_dir=resolve_cache_dir(str(args.cache_dir) if args.cache_dir else None),
        workers=args.workers,
        cap=args.cap,
    )
    if cfg.digits < 16:
        raise SystemExit("--digits must be at least 16")
    if args.command == "spectrum":
        return cmd_spectrum(cfg)
    if args.command == "energy":
        return cmd_energy(cfg)
    if args.command == "density":
        return cmd_density(cfg, args.x_min, args.x_max, args.points)
    if args.command == "rdm":
        return cmd_rdm(cfg)
    if args.command == "figure":
        return cmd_figure(cfg, args.name, args.n_max, args.points)
    return cmd_cache(cfg, args.action)


if __name__ == "__main__":
    sys.exit(main())
