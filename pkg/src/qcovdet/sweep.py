"""Batch verification sweeps over random instances.

A sweep draws seeded instances (deterministic in the base seed: instance
t uses seed base + t), rotates through the configured (n, N, parameter)
combinations, runs the chosen check, and emits one record per report plus
a summary.  Records carry (seed, n, N, min_gap and the function or kernel
names), which is everything needed to replay an instance exactly.

Output: JSON-lines (one record object per line, keys sorted) and a CSV
with columns check, n, N, f1, f2, seed, lhs, rhs, margin, verdict.
"""

from __future__ import annotations

import csv
import json
import math

from dataclasses import dataclass, field

from .inequalities import (
    FAIL,
    HYPOTHESIS_NOT_MET,
    PASS,
    InequalityReport,
    check_cross,
    check_function_ordering,
    check_hierarchy,
    check_main_inequality,
    check_robertson_schrodinger,
)
from .monotone import (
    MonotoneFunction,
    asymmetric_kernel,
    classical_kernel,
    parse_function,
    parse_kernel,
    symmetric_kernel,
)
from .states import sample_instance

_CHECKS = ("hierarchy", "main", "cross", "robertson", "schrodinger")

CSV_COLUMNS = ("check", "n", "N", "f1", "f2", "seed", "lhs", "rhs", "margin", "verdict")


@dataclass
class SweepConfig:
    """Everything one sweep needs; validated on construction.

    functions and functions2 are serialized names ("sld", "wyd:0.3", ...).
    For check "main", kernel_pairs may override the derived kernel roster
    with explicit (g1, g2) kernel names like ("cl", "as:wy").
    """

    check: str
    trials: int
    seed: int
    n_values: tuple[int, ...] = (2, 3)
    N_values: tuple[int, ...] = (2,)
    functions: tuple[str, ...] = ("sld",)
    functions2: tuple[str, ...] = ()
    kernel_pairs: tuple[tuple[str, str], ...] = ()
    direction: str = "asym_vs_sym"
    min_gap: float = 0.01
    grid_points: int = 40
    tol_scale: float = 1e-9

    def __post_init__(self):
        if self.check not in _CHECKS:
            raise ValueError(f"unknown check {self.check!r}, expected one of {_CHECKS}")
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")
        if not self.n_values or any(n < 2 for n in self.n_values):
            raise ValueError(f"n values must all be at least 2, got {self.n_values}")
        if not self.N_values or any(N < 1 for N in self.N_values):
            raise ValueError(f"N values must all be at least 1, got {self.N_values}")
        if self.check == "schrodinger" and tuple(self.N_values) != (2,):
            raise ValueError("check 'schrodinger' is the N = 2 case; use --N 2")
        if self.min_gap < 0 or self.min_gap >= 1:
            raise ValueError(f"min_gap must lie in [0, 1), got {self.min_gap}")
        if self.direction not in ("asym_vs_sym", "sym_vs_asym"):
            raise ValueError(f"unknown cross direction {self.direction!r}")
        if self.check == "cross" and not self.functions2:
            raise ValueError("check 'cross' needs a second function list (--f2)")
        # parse early so bad names fail before any work happens
        self.functions_parsed = tuple(parse_function(s) for s in self.functions)
        self.functions2_parsed = tuple(parse_function(s) for s in self.functions2)
        self.kernel_pairs_parsed = tuple(
            (parse_kernel(a), parse_kernel(b)) for a, b in self.kernel_pairs
        )
        self.rotation = _rotation(self)
        if not self.rotation:
            raise ValueError("sweep rotation is empty; check the function lists")


def default_kernel_pairs(functions: tuple[MonotoneFunction, ...]):
    """Hypothesis-passing kernel pairs derived from a function roster.

    Includes, for every f, the hierarchy pairs (cl, s[f]), (s[f], as[f]),
    (cl, as[f]); and for every ordered function pair (f1, f2) whose
    pointwise ordering f1(0)/f1 >= f2(0)/f2 holds on the reference grid,
    the like-for-like pairs (s[f1], s[f2]) and (as[f1], as[f2]).
    """
    pairs = []
    for f in functions:
        cl = classical_kernel()
        s = symmetric_kernel(f)
        a = asymmetric_kernel(f)
        pairs.append((cl, s))
        pairs.append((s, a))
        pairs.append((cl, a))
    for f1 in functions:
        for f2 in functions:
            if f1.label == f2.label:
                continue
            if check_function_ordering(f1, f2).ok:
                pairs.append((symmetric_kernel(f1), symmetric_kernel(f2)))
                pairs.append((asymmetric_kernel(f1), asymmetric_kernel(f2)))
    return pairs


def _rotation(cfg: SweepConfig) -> list[dict]:
    """The deterministic list of parameter combinations cycled over trials."""
    combos = []
    for n in cfg.n_values:
        for N in cfg.N_values:
            if cfg.check == "hierarchy":
                for f in cfg.functions_parsed:
                    combos.append({"n": n, "N": N, "f": f})
            elif cfg.check == "cross":
                for f1 in cfg.functions_parsed:
                    for f2 in cfg.functions2_parsed:
                        combos.append({"n": n, "N": N, "f": f1, "f2": f2})
            elif cfg.check == "main":
                pairs = cfg.kernel_pairs_parsed or default_kernel_pairs(
                    cfg.functions_parsed
                )
                for g1, g2 in pairs:
                    combos.append({"n": n, "N": N, "g1": g1, "g2": g2})
            else:
                combos.append({"n": n, "N": N})
    return combos


def _record(cfg: SweepConfig, trial: int, seed: int, combo: dict, report: InequalityReport) -> dict:
    f1 = combo.get("f")
    f2 = combo.get("f2")
    g1 = combo.get("g1")
    g2 = combo.get("g2")
    rec = report.to_dict()
    rec.update(
        {
            "check": cfg.check,
            "trial": trial,
            "seed": seed,
            "n": combo["n"],
            "N": combo["N"],
            "min_gap": cfg.min_gap,
            "f1": g1.label if g1 is not None else (f1.label if f1 else None),
            "f2": g2.label if g2 is not None else (f2.label if f2 else None),
        }
    )
    return rec


def run_trial(cfg: SweepConfig, trial: int) -> list[dict]:
    """Run one trial: sample the instance, run the check, build records."""
    combo = cfg.rotation[trial % len(cfg.rotation)]
    seed = cfg.seed + trial
    density, obs = sample_instance(combo["n"], combo["N"], seed, cfg.min_gap)
    if cfg.check == "hierarchy":
        reports = check_hierarchy(
            density, obs, combo["f"],
            grid_points=cfg.grid_points, tol_scale=cfg.tol_scale,
        )
    elif cfg.check == "cross":
        reports = [
            check_cross(
                density, obs, combo["f"], combo["f2"], direction=cfg.direction,
                grid_points=cfg.grid_points, tol_scale=cfg.tol_scale,
            )
        ]
    elif cfg.check == "main":
        reports = [
            check_main_inequality(
                density, obs, combo["g1"], combo["g2"],
                grid_points=cfg.grid_points, tol_scale=cfg.tol_scale,
            )
        ]
    else:
        reports = [
            check_robertson_schrodinger(density, obs, tol_scale=cfg.tol_scale)
        ]
    return [_record(cfg, trial, seed, combo, r) for r in reports]


@dataclass
class SweepResult:
    config: SweepConfig
    records: list[dict] = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, HYPOTHESIS_NOT_MET: 0}
        for rec in self.records:
            out[rec["verdict"]] = out.get(rec["verdict"], 0) + 1
        return out

    def summary(self) -> dict:
        counts = self.counts
        worst = None
        for rec in self.records:
            if rec["verdict"] == HYPOTHESIS_NOT_MET or math.isnan(rec["margin"]):
                continue
            if worst is None or rec["margin"] < worst["margin"]:
                worst = rec
        printed_gap = sum(
            1
            for rec in self.records
            if rec["verdict"] == PASS
            and not math.isnan(rec["components"].get("rhs_printed", math.nan))
            and rec["components"]["rhs_printed"] > rec["lhs"] + rec["tol"]
        )
        return {
            "check": self.config.check,
            "trials": self.config.trials,
            "records": len(self.records),
            "pass": counts.get(PASS, 0),
            "fail": counts.get(FAIL, 0),
            "hypothesis_not_met": counts.get(HYPOTHESIS_NOT_MET, 0),
            "min_margin": worst["margin"] if worst else None,
            "min_margin_seed": worst["seed"] if worst else None,
            "min_margin_name": worst["name"] if worst else None,
            "printed_rhs_exceeds_lhs": printed_gap,
        }


def run_sweep(cfg: SweepConfig) -> SweepResult:
    result = SweepResult(config=cfg)
    for trial in range(cfg.trials):
        result.records.extend(run_trial(cfg, trial))
    return result


# ---------------------------------------------------------------------------
# writers
# ---------------------------------------------------------------------------


def write_jsonl(records, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True, allow_nan=True))
            fh.write("\n")


def write_csv(records, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(
                [
                    rec["check"],
                    rec["n"],
                    rec["N"],
                    rec["f1"] if rec["f1"] is not None else "",
                    rec["f2"] if rec["f2"] is not None else "",
                    rec["seed"],
                    _fmt(rec["lhs"]),
                    _fmt(rec["rhs"]),
                    _fmt(rec["margin"]),
                    rec["verdict"],
                ]
            )


def _fmt(value: float) -> str:
    return f"{value:.17g}"
