"""Command line interface.

    qcovdet compute  --check <name> (--instance FILE | --n INT --N INT --seed INT)
                     [--f NAME] [--f2 NAME] [--g1 KERNEL] [--g2 KERNEL]
                     [--direction asym_vs_sym|sym_vs_asym] [--min-gap X]
                     [--grid-points K] [--tol-det X] [--out FILE] [--format json|csv]
    qcovdet sweep    --check <name> --trials T --seed S --n LIST --N LIST
                     [--f LIST] [--f2 LIST] [--direction ...] [--min-gap X]
                     [--grid-points K] [--tol-det X] [--out PREFIX]
                     [--format json|csv|both]
    qcovdet catalog

Checks: hierarchy | main | cross | robertson | schrodinger.  Function
names: sld | wy | km | wyd:<beta> (or pass --beta with --f wyd).  Kernel
names for --g1/--g2: cl | s:<f> | as:<f> | inv:<f>.

Exit codes: 0 all PASS, 1 any FAIL, 2 no FAIL but some hypothesis not
met, 3 input or usage error.  Output is deterministic for fixed inputs:
no timestamps, keys sorted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import ValidationError
from .inequalities import (
    FAIL,
    HYPOTHESIS_NOT_MET,
    check_cross,
    check_hierarchy,
    check_main_inequality,
    check_robertson_schrodinger,
)
from .instance_io import load_instance
from .monotone import catalog, parse_function, parse_kernel
from .states import sample_instance
from .sweep import CSV_COLUMNS, SweepConfig, run_sweep, write_csv, write_jsonl

_EXIT_PASS = 0
_EXIT_FAIL = 1
_EXIT_HYPOTHESIS = 2
_EXIT_INPUT = 3


class _UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    """Parse "2,3,4" or "2:4" (inclusive range) or a single integer."""
    text = text.strip()
    if ":" in text:
        lo, _, hi = text.partition(":")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(part) for part in text.split(",") if part)


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcovdet",
        description="Monotone-metric covariance matrices and determinant "
        "uncertainty inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--check", required=True,
                        choices=["hierarchy", "main", "cross", "robertson", "schrodinger"])
    common.add_argument("--f", default="sld",
                        help="monotone function name(s), comma separated")
    common.add_argument("--f2", default="",
                        help="second function name(s) for cross checks")
    common.add_argument("--beta", type=float, default=None,
                        help="shorthand: --f wyd --beta 0.3 means wyd:0.3")
    common.add_argument("--g1", default=None, help="explicit kernel for main checks")
    common.add_argument("--g2", default=None, help="explicit kernel for main checks")
    common.add_argument("--direction", default="asym_vs_sym",
                        choices=["asym_vs_sym", "sym_vs_asym"])
    common.add_argument("--min-gap", type=float, default=0.01, dest="min_gap")
    common.add_argument("--grid-points", type=int, default=40, dest="grid_points")
    common.add_argument("--tol-det", type=float, default=1e-9, dest="tol_det")
    common.add_argument("--out", default=None, help="write results to this path")

    comp = sub.add_parser("compute", parents=[common],
                          help="run one check on a single instance")
    comp.add_argument("--instance", default=None, help="instance JSON file")
    comp.add_argument("--n", type=int, default=None, help="sampled instance dimension")
    comp.add_argument("--N", type=int, default=None, help="sampled observable count")
    comp.add_argument("--seed", type=int, default=None, help="sampled instance seed")
    comp.add_argument("--format", default="json", choices=["json", "csv"])

    swp = sub.add_parser("sweep", parents=[common],
                         help="run a check over many seeded random instances")
    swp.add_argument("--trials", type=int, required=True)
    swp.add_argument("--seed", type=int, required=True)
    swp.add_argument("--n", type=_int_list, default=(2, 3), help="dimensions, e.g. 2,3,4")
    swp.add_argument("--N", type=_int_list, default=(2,), help="tuple sizes, e.g. 1,2,3")
    swp.add_argument("--format", default="json", choices=["json", "csv", "both"])

    sub.add_parser("catalog", help="list the built-in functions, kernels and checks")
    return parser


def _apply_beta(name: str, beta) -> str:
    if beta is not None and name.strip().lower() == "wyd":
        return f"wyd:{beta:g}"
    return name


def _compute_reports(args):
    if args.instance is not None:
        if args.seed is not None or args.n is not None or args.N is not None:
            raise _UsageError("--instance excludes --n/--N/--seed")
        density, obs = load_instance(args.instance)
    else:
        if args.n is None or args.N is None or args.seed is None:
            raise _UsageError("compute needs --instance or all of --n, --N, --seed")
        density, obs = sample_instance(args.n, args.N, args.seed, args.min_gap)

    f1 = parse_function(_apply_beta(args.f, args.beta))
    if args.check == "hierarchy":
        return check_hierarchy(density, obs, f1, grid_points=args.grid_points,
                               tol_scale=args.tol_det)
    if args.check == "cross":
        if not args.f2:
            raise _UsageError("cross checks need --f2")
        f2 = parse_function(_apply_beta(args.f2, None))
        return [check_cross(density, obs, f1, f2, direction=args.direction,
                            grid_points=args.grid_points, tol_scale=args.tol_det)]
    if args.check == "main":
        if not args.g1 or not args.g2:
            raise _UsageError("main checks need --g1 and --g2 kernel names")
        g1 = parse_kernel(args.g1)
        g2 = parse_kernel(args.g2)
        return [check_main_inequality(density, obs, g1, g2,
                                      grid_points=args.grid_points,
                                      tol_scale=args.tol_det)]
    if args.check == "schrodinger" and len(obs) != 2:
        raise _UsageError(f"schrodinger check needs exactly 2 observables, got {len(obs)}")
    return [check_robertson_schrodinger(density, obs, tol_scale=args.tol_det)]


def _verdict_exit(verdicts) -> int:
    if any(v == FAIL for v in verdicts):
        return _EXIT_FAIL
    if any(v == HYPOTHESIS_NOT_MET for v in verdicts):
        return _EXIT_HYPOTHESIS
    return _EXIT_PASS


def _reports_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "verdict", "lhs", "rhs", "margin", "tol"])
    for rep in reports:
        writer.writerow([rep.name, rep.verdict, f"{rep.lhs:.17g}", f"{rep.rhs:.17g}",
                         f"{rep.margin:.17g}", f"{rep.tol:.17g}"])
    return buf.getvalue()


def _cmd_compute(args) -> int:
    reports = _compute_reports(args)
    if args.format == "json":
        text = json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2,
                          allow_nan=True)
        text += "\n"
    else:
        text = _reports_csv(reports)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return _verdict_exit([r.verdict for r in reports])


def _cmd_sweep(args) -> int:
    cfg = SweepConfig(
        check=args.check,
        trials=args.trials,
        seed=args.seed,
        n_values=tuple(args.n),
        N_values=tuple(args.N),
        functions=_str_list(_apply_beta(args.f, args.beta)),
        functions2=_str_list(args.f2),
        kernel_pairs=((args.g1, args.g2),) if args.g1 and args.g2 else (),
        direction=args.direction,
        min_gap=args.min_gap,
        grid_points=args.grid_points,
        tol_scale=args.tol_det,
    )
    result = run_sweep(cfg)
    summary = result.summary()
    if args.out:
        if args.format in ("json", "both"):
            write_jsonl(result.records, f"{args.out}.jsonl")
        if args.format in ("csv", "both"):
            write_csv(result.records, f"{args.out}.csv")
    sys.stdout.write(json.dumps(summary, sort_keys=True, indent=2, allow_nan=True))
    sys.stdout.write("\n")
    return _EXIT_FAIL if summary["fail"] else (
        _EXIT_HYPOTHESIS if summary["hypothesis_not_met"] else _EXIT_PASS
    )


def _cmd_catalog(_args) -> int:
    roster = {
        "functions": [
            {"name": f.label, "zero": f.zero, "regular": f.is_regular}
            for f in catalog()
        ],
        "kernels": ["cl", "s:<f>", "as:<f>", "inv:<f>"],
        "checks": ["hierarchy", "main", "cross", "robertson", "schrodinger"],
        "csv_columns": list(CSV_COLUMNS),
    }
    sys.stdout.write(json.dumps(roster, sort_keys=True, indent=2))
    sys.stdout.write("\n")
    return _EXIT_PASS


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; keep 0 for --help, map the rest
        code = exc.code if isinstance(exc.code, int) else 1
        return _EXIT_PASS if code == 0 else _EXIT_INPUT
    try:
        if args.command == "compute":
            return _cmd_compute(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_catalog(args)
    except (_UsageError, ValidationError, ValueError, OSError) as exc:
        print(f"qcovdet: error: {exc}", file=sys.stderr)
        return _EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
