"""Batch command-line front end.

Subcommands: ``point`` (one report), ``sweep`` (plot-ready tables),
``threshold`` (bisection on the dead-region boundary), ``validate`` (the
invariant grid).  Output is CSV (fixed column order, 12 significant digits)
or JSON lines; identical invocations produce byte-identical output,
independent of the worker count.

Exit codes: 0 success, 2 usage error, 3 numeric-domain error, 4 validation
failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys

from .correlations import full_report
from .errors import DiamondQCError, GridTooLarge, NoBracket, NotBellDiagonal, TemperatureTooLow
from .model import ChainParams
from .sweep import (
    AxisRange,
    DEFAULT_GRID_CAP,
    DEFAULT_TEMP_FLOOR,
    MEASURES,
    SweepRow,
    SweepSpec,
    ThresholdQuery,
    evaluate_row,
    find_threshold,
    run_validate,
    sweep_points,
)

CSV_HEADER = "T,H,J,J2,Jm,concurrence,qd,classical_corr,mutual_info,gmqd,gqd1,theta,flags"
_COLUMNS = ("concurrence", "qd", "classical_corr", "mutual_info", "gmqd", "gqd1", "theta")


def _fmt(x) -> str:
    if x is None:
        return "NA"
    return format(float(x), ".12g")


def parse_axis(text: str, flag: str) -> AxisRange:
    """A bare number pins the axis; start:stop:steps sweeps it."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(
                f"{flag} expects VALUE or START:STOP:STEPS, got {text!r}")
        try:
            start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"{flag}: {exc}") from exc
        return AxisRange(start, stop, steps)
    try:
        return AxisRange.fixed(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{flag}: {exc}") from exc


def _add_param_flags(parser, sweepable: bool):
    kind = "value or START:STOP:STEPS" if sweepable else "value"
    parser.add_argument("--j", default="0", help=f"Ising-Heisenberg coupling ({kind})")
    parser.add_argument("--j2", default="1", help=f"Heisenberg dimer coupling ({kind})")
    parser.add_argument("--jm", default="0", help=f"next-nearest Ising coupling ({kind})")
    parser.add_argument("--field", default="0", help=f"magnetic field H ({kind})")
    parser.add_argument("--temp", default="1", help=f"temperature T ({kind})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diamondqc",
        description="Quantum correlations of the spin-1/2 Ising-Heisenberg "
                    "diamond-chain cluster.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="report every measure at one parameter point")
    _add_param_flags(p_point, sweepable=False)
    p_point.add_argument("--format", choices=("table", "csv", "jsonl"), default="table")
    p_point.add_argument("--out", default=None, help="output path (default stdout)")
    p_point.add_argument("--temp-floor", type=float, default=None,
                         help="substitute this temperature for a requested T <= 0")
    p_point.add_argument("--use-verbatim-v", action="store_true",
                         help="use the verbatim closed-form v weight in diagnostics")

    p_sweep = sub.add_parser("sweep", help="evaluate measures over a parameter grid")
    _add_param_flags(p_sweep, sweepable=True)
    p_sweep.add_argument("--measures", default=",".join(MEASURES),
                         help="comma list from: " + ",".join(MEASURES))
    p_sweep.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--temp-floor", type=float, default=DEFAULT_TEMP_FLOOR,
                         help="temperature substituted for swept T <= 0 "
                              f"(default {DEFAULT_TEMP_FLOOR})")
    p_sweep.add_argument("--grid-cap", type=int, default=DEFAULT_GRID_CAP)
    p_sweep.add_argument("--workers", type=int, default=1,
                         help="process pool size; rows are always emitted in grid order")
    p_sweep.add_argument("--use-verbatim-v", action="store_true",
                         help="use the verbatim closed-form v weight in diagnostics")

    p_thr = sub.add_parser("threshold", help="bisect the dead-region boundary of a measure")
    _add_param_flags(p_thr, sweepable=False)
    p_thr.add_argument("--scan", choices=("T", "H"), required=True)
    p_thr.add_argument("--bracket", required=True, help="LO:HI")
    p_thr.add_argument("--measure", choices=MEASURES, default="concurrence")
    p_thr.add_argument("--eps-dead", type=float, default=1e-9)
    p_thr.add_argument("--tol", type=float, default=1e-4)

    p_val = sub.add_parser("validate", help="run the full invariant grid")
    p_val.add_argument("--grid-cap", type=int, default=None,
                       help="cap on the number of validation grid points")
    p_val.add_argument("--points", type=int, default=200)
    p_val.add_argument("--use-verbatim-v", action="store_true")

    return parser


def _point_params(args) -> ChainParams:
    values = {}
    for key, flag in (("j", "--j"), ("j2", "--j2"), ("jm", "--jm"),
                      ("h", "--field"), ("t", "--temp")):
        axis = parse_axis(getattr(args, flag.lstrip("-").replace("-", "_")), flag)
        if axis.steps != 1:
            raise argparse.ArgumentTypeError(f"{flag} must be a single value here")
        values[key] = axis.start
    if values["t"] <= 0.0:
        floor = getattr(args, "temp_floor", None)
        if floor is None:
            raise TemperatureTooLow(
                "requested T <= 0; pass --temp-floor to substitute a small "
                "temperature for the zero-temperature limit")
        values["t"] = floor
        return ChainParams(**values), True
    return ChainParams(**values), False


def _row_dict(row: SweepRow) -> dict:
    p = row.params
    out = {"T": p.t, "H": p.h, "J": p.j, "J2": p.j2, "Jm": p.jm,
           "concurrence": row.concurrence, "qd": row.qd,
           "classical_corr": row.classical_corr, "mutual_info": row.mutual_info,
           "gmqd": row.gmqd, "gqd1": row.gqd1, "theta": row.theta,
           "flags": ";".join(row.flags)}
    return out


def _csv_line(row: SweepRow) -> str:
    d = _row_dict(row)
    fields = [_fmt(d[k]) for k in ("T", "H", "J", "J2", "Jm")]
    fields += [_fmt(d[k]) for k in _COLUMNS]
    fields.append(d["flags"])
    return ",".join(fields)


def _jsonl_line(row: SweepRow) -> str:
    d = _row_dict(row)
    clean = {k: (v if v is not None else None) for k, v in d.items()}
    return json.dumps(clean, separators=(",", ":"))


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def cmd_point(args) -> int:
    params, floored = _point_params(args)
    report = full_report(params, verbatim_v=args.use_verbatim_v)
    if floored:
        report = report.with_flags("temp_floored")
    stream, close = _open_out(args.out)
    try:
        if args.format == "table":
            p = report.params
            stream.write(f"point: T={_fmt(p.t)} H={_fmt(p.h)} J={_fmt(p.j)} "
                         f"J2={_fmt(p.j2)} Jm={_fmt(p.jm)}\n")
            rows = [
                ("concurrence", report.concurrence),
                ("quantum discord", report.quantum_discord),
                ("classical correlation", report.classical_correlation),
                ("mutual information", report.mutual_information),
                ("geometric discord (HS)", report.gmqd),
                ("geometric discord (1-norm)", report.gqd_1norm),
                ("theta (shortcut)", report.theta),
            ]
            for name, value in rows:
                stream.write(f"  {name:<28}{_fmt(value)}\n")
            if report.bell_coeffs is not None:
                c = report.bell_coeffs
                stream.write(f"  bell coefficients           "
                             f"({_fmt(c.c1)}, {_fmt(c.c2)}, {_fmt(c.c3)})\n")
            if report.flags:
                stream.write(f"  flags                       {';'.join(report.flags)}\n")
        else:
            row = SweepRow(params=report.params, concurrence=report.concurrence,
                           qd=report.quantum_discord,
                           classical_corr=report.classical_correlation,
                           mutual_info=report.mutual_information, gmqd=report.gmqd,
                           gqd1=report.gqd_1norm, theta=report.theta,
                           flags=report.flags)
            if args.format == "csv":
                stream.write(CSV_HEADER + "\n")
                stream.write(_csv_line(row) + "\n")
            else:
                stream.write(_jsonl_line(row) + "\n")
    finally:
        if close:
            stream.close()
    return 0


def _sweep_spec(args) -> SweepSpec:
    measures = tuple(m.strip() for m in args.measures.split(",") if m.strip())
    return SweepSpec(
        t=parse_axis(args.temp, "--temp"),
        h=parse_axis(args.field, "--field"),
        j=parse_axis(args.j, "--j"),
        j2=parse_axis(args.j2, "--j2"),
        jm=parse_axis(args.jm, "--jm"),
        measures=measures,
        grid_cap=args.grid_cap,
    )


def _evaluate_for_pool(item):
    params, floored, measures, verbatim_v = item
    extra = ("temp_floored",) if floored else ()
    return evaluate_row(params, measures, None, extra, verbatim_v)


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    to_line = _csv_line if args.format == "csv" else _jsonl_line
    stream, close = _open_out(args.out)
    try:
        if args.format == "csv":
            stream.write(CSV_HEADER + "\n")
        points = ((p, fl, spec.measures, args.use_verbatim_v)
                  for p, fl in sweep_points(spec, args.temp_floor))
        try:
            if args.workers > 1:
                with concurrent.futures.ProcessPoolExecutor(args.workers) as pool:
                    for row in pool.map(_evaluate_for_pool, points, chunksize=16):
                        stream.write(to_line(row) + "\n")
            else:
                for item in points:
                    stream.write(to_line(_evaluate_for_pool(item)) + "\n")
        except KeyboardInterrupt:
            # completed ordered prefix has already been written; fail loudly
            stream.flush()
            print("interrupted: flushed completed prefix", file=sys.stderr)
            return 130
    finally:
        if close:
            stream.close()
    return 0


def cmd_threshold(args) -> int:
    fixed, _ = _point_params(args)
    lo_hi = args.bracket.split(":")
    if len(lo_hi) != 2:
        raise argparse.ArgumentTypeError("--bracket expects LO:HI")
    query = ThresholdQuery(scan=args.scan, lo=float(lo_hi[0]), hi=float(lo_hi[1]),
                           measure=args.measure, eps_dead=args.eps_dead, tol=args.tol)
    result = find_threshold(query, fixed)
    if result.found:
        print(f"threshold {args.measure} vs {args.scan}: {_fmt(result.location)}")
    else:
        print(f"NoThreshold: {result.reason}")
    return 0


def cmd_validate(args) -> int:
    summary = run_validate(points=args.points, grid_cap=args.grid_cap,
                           use_verbatim_v=args.use_verbatim_v)
    print(summary.render())
    return summary.exit_code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"point": cmd_point, "sweep": cmd_sweep,
                "threshold": cmd_threshold, "validate": cmd_validate}
    try:
        return handlers[args.command](args)
    except (TemperatureTooLow, GridTooLarge, NoBracket, NotBellDiagonal) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except argparse.ArgumentTypeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DiamondQCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
