"""Command-line interface.

    kinetic1d run CASE.ini [--output snap.csv]
    kinetic1d converge CASE.ini --meshes 40,80,160
    kinetic1d knudsen CASE.ini --speeds 0.5,1,2,4
    kinetic1d stability --table1

Exit status: 0 on success, 2 for configuration errors, 3 for numerical
failures (subcharacteristic violation, inadmissible state, singular solve).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_case, parse_overrides
from .errors import ConfigError, KineticError
from .harness import convergence_study, emit, knudsen_sweep, run_case, snapshot_csv
from .stability import table1

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# Shorthand flags and the case keys they set.
_SHORTCUTS = (
    ("--n", "n", int),
    ("--order", "order", int),
    ("--M", "M", int),
    ("--cfl", "cfl", float),
    ("--space", "space", int),
    ("--a", "a", float),
    ("--ratio", "ratio", float),
    ("--t-end", "t_end", float),
)


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    vals = _float_list(text)
    if any(v != int(v) for v in vals):
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return [int(v) for v in vals]


def _add_case_args(p):
    p.add_argument("config", help="INI case file")
    p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                   help="override any case key (repeatable)")
    for flag, key, typ in _SHORTCUTS:
        p.add_argument(flag, dest=f"opt_{key}", type=typ, default=None, help=f"override {key}")


def build_parser():
    parser = argparse.ArgumentParser(prog="kinetic1d", description="Kinetic BGK solver for 1D convection-diffusion.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one case and write the final snapshot")
    _add_case_args(p)
    p.add_argument("--output", "-o", help="snapshot CSV path (default stdout)")
    p.add_argument("--snapshot-dir", help="directory for intermediate snapshots")

    p = sub.add_parser("converge", help="mesh convergence study")
    _add_case_args(p)
    p.add_argument("--meshes", type=_int_list, required=True, help="e.g. 40,80,160")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("knudsen", help="consistency error against Knudsen number")
    _add_case_args(p)
    p.add_argument("--speeds", type=_float_list, required=True,
                   help="kinetic speeds, or speed ratios for adaptive cases")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("stability", help="critical CFL numbers")
    p.add_argument("--table1", action="store_true", required=True, help="DeC Lobatto IIIC table")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    return parser


def _case(args):
    overrides = parse_overrides(args.overrides)
    for _, key, _ in _SHORTCUTS:
        v = getattr(args, f"opt_{key}")
        if v is not None:
            overrides[key] = v
    return load_case(args.config, overrides)


def _write(data: bytes, path=None):
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _cmd_run(args):
    case = _case(args)
    res = run_case(case)
    if args.snapshot_dir:
        out = Path(args.snapshot_dir)
        out.mkdir(parents=True, exist_ok=True)
        for snap in res.trajectory.snapshots:
            (out / f"snapshot_t{snap.t:.6g}.csv").write_bytes(snapshot_csv(res.problem, snap))
    _write(snapshot_csv(res.problem, res.final), args.output)
    msg = f"steps={res.trajectory.steps} t={res.final.t:.8g} a={res.final.a:.8g} eps={res.problem.knudsen(res.final.a):.6g}"
    if res.l2 is not None:
        msg += f" L2={res.l2:.8e}"
    print(msg, file=sys.stderr)


def _cmd_converge(args):
    _write(emit(convergence_study(_case(args), args.meshes, args.jobs), args.format))


def _cmd_knudsen(args):
    _write(emit(knudsen_sweep(_case(args), args.speeds, args.jobs), args.format))


def _cmd_stability(args):
    _write(emit(table1(), args.format))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"run": _cmd_run, "converge": _cmd_converge, "knudsen": _cmd_knudsen, "stability": _cmd_stability}
    try:
        handler[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except KineticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return 0
