"""Command line front end.

Subcommands::

    transmit    R and T at one energy
    sweep       T over an energy or V0 grid (CSV or JSON)
    resonances  located resonances with their widths
    validate    analytic vs. oracle agreement over a sweep

Exit codes: 0 success, 2 usage error, 3 domain or engine error,
4 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import analytic, oracle
from .errors import HulthenError
from .potential import PotentialParams
from .sweeps import (
    DEFAULT_POINTS,
    PRESETS,
    SweepSpec,
    find_resonances,
    preset,
    run_sweep,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_VALIDATION = 4
VALIDATION_TOL = 1e-6


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render(records: list[dict], fmt: str) -> str:
    """Serialise a list of flat records; all records share the first one's keys."""
    if fmt == "json":
        clean = [{k: _json_value(v) for k, v in r.items()} for r in records]
        return json.dumps(clean, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if records:
        keys = list(records[0])
        writer.writerow(keys)
        for r in records:
            writer.writerow([_fmt(r[k]) for k in keys])
    return buf.getvalue()


def _emit(text: str, output: str | None):
    if output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write output {output!r}: {exc.strerror}") from exc


def _parse_range(text: str):
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"--range expects lo:hi, got {text!r}") from None
    return lo, hi


def _params(args, V0=None) -> PotentialParams:
    missing = [name for name in ("a", "q") if getattr(args, name) is None]
    if V0 is None and args.v0 is None:
        missing.insert(0, "v0")
    if missing:
        raise UsageError("missing " + ", ".join(f"--{n}" for n in missing))
    return PotentialParams(V0=args.v0 if V0 is None else V0, a=args.a, q=args.q, m=args.m)


def _sweep_spec(args, engine: str) -> SweepSpec:
    lo = hi = None
    if args.range is not None:
        lo, hi = _parse_range(args.range)
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise UsageError(f"unknown preset {args.preset!r}")
        return preset(args.preset, points=args.points, engine=engine, m=args.m, lo=lo, hi=hi)
    if args.range is None:
        raise UsageError("give --preset or --range")
    if args.variable == "strength":
        if args.energy is None:
            raise UsageError("a strength sweep needs --energy")
        params = _params(args, V0=0.0)
        return SweepSpec("strength", lo, hi, args.points, params, energy=args.energy,
                         engine=engine)
    return SweepSpec("energy", lo, hi, args.points, _params(args), engine=engine)


def cmd_transmit(args) -> int:
    if args.energy is None:
        raise UsageError("missing --energy")
    params = _params(args)
    E = args.energy
    record = {"E": float(E)}
    if args.engine == "oracle":
        c = oracle.oracle_transmission(params, E)
    else:
        c = analytic.transmission(params, E)
    record.update(R=c.R, T=c.T, unitarity_residual=c.unitarity_residual)
    if args.engine == "both":
        record["t_discrepancy"] = abs(c.T - oracle.oracle_transmission(params, E).T)
    _emit(render([record], args.format), args.output)
    return EXIT_OK


def _report_row_errors(table):
    for value, err in zip(table.values, table.errors):
        if err is not None:
            print(f"warning: point {_fmt(value)} failed: {err}", file=sys.stderr)


def cmd_sweep(args) -> int:
    table = run_sweep(_sweep_spec(args, args.engine), workers=args.workers)
    _report_row_errors(table)
    _emit(render(table.records(), args.format), args.output)
    return EXIT_OK


def cmd_resonances(args) -> int:
    table = run_sweep(_sweep_spec(args, args.engine), workers=args.workers)
    _report_row_errors(table)
    peaks = find_resonances(table, refine=args.refine)
    records = [
        {"location": p.location, "peak_T": p.peak_T, "fwhm": p.fwhm, "refined": p.refined}
        for p in peaks
    ]
    if not records and args.format == "csv":
        _emit("location,peak_T,fwhm,refined\n", args.output)
    else:
        _emit(render(records, args.format), args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    table = run_sweep(_sweep_spec(args, "both"), workers=args.workers)
    _report_row_errors(table)
    oracle_failed = any(e is not None and e.startswith("oracle") for e in table.errors)
    analytic_failed = any(e is not None and e.startswith("analytic") for e in table.errors)
    d = table.discrepancy[np.isfinite(table.discrepancy)]
    residual = table.unitarity_residual[np.isfinite(table.unitarity_residual)]
    max_d = float(d.max()) if d.size else math.nan
    if oracle_failed:
        status = "oracle failure"
        code = EXIT_DOMAIN
    elif analytic_failed or not max_d <= VALIDATION_TOL:
        status = "analytic degraded"
        code = EXIT_VALIDATION
    else:
        status = "PASS"
        code = EXIT_OK
    report = {
        "points": len(table),
        "max_discrepancy": max_d,
        "mean_discrepancy": float(d.mean()) if d.size else math.nan,
        "max_unitarity_residual": float(residual.max()) if residual.size else math.nan,
        "tolerance": VALIDATION_TOL,
        "status": status,
    }
    _emit(render([report], args.format), args.output)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hulthen-dirac",
        description="Dirac scattering off the Hulthen barrier: transmission and resonances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--v0", type=float, help="barrier strength V0")
    common.add_argument("--a", type=float, help="diffuseness a")
    common.add_argument("--q", type=float, help="shape parameter q, 0 < q < 1")
    common.add_argument("--m", type=float, default=1.0, help="particle mass (default 1)")
    common.add_argument("--energy", type=float, help="energy E (fixed E for strength sweeps)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", help="output path (default: stdout)")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--preset", help="fig1 ... fig6")
    grid.add_argument("--variable", choices=("energy", "strength"), default="energy")
    grid.add_argument("--range", help="lo:hi of the swept variable, grid is (lo, hi]")
    grid.add_argument("--points", type=int, default=DEFAULT_POINTS)
    grid.add_argument("--workers", type=int, default=None, help="worker processes")

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument("--engine", choices=("analytic", "oracle", "both"), default="analytic")

    p = sub.add_parser("transmit", parents=[common, engine], help="R and T at one energy")
    p.set_defaults(func=cmd_transmit)
    p = sub.add_parser("sweep", parents=[common, grid, engine], help="tabulate R and T")
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("resonances", parents=[common, grid, engine], help="locate resonances")
    p.add_argument("--no-refine", dest="refine", action="store_false",
                   help="report grid maxima without golden-section refinement")
    p.set_defaults(func=cmd_resonances)
    p = sub.add_parser("validate", parents=[common, grid], help="analytic vs. oracle")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HulthenError as exc:
        print(f"error: {exc.reason}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
