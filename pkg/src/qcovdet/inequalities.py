"""Determinant inequality checks for covariance matrices.

The central statement: for kernels g1 >= g2 on the spectrum of D and the
covariance matrices G1, G2 they induce on an N-tuple of centred
observables,

    det G1  >=  det G2 + det(G1 - G2) + R,

    R = sum_{k=1}^{N-1} C(N, k) det(G2)^(k/N) det(G1 - G2)^((N-k)/N),

which packages the Minkowski determinant inequality
det(P + Q)^(1/N) >= det(P)^(1/N) + det(Q)^(1/N) applied to P = G2,
Q = G1 - G2.  The remainder base det(G2) is what the expansion of
Minkowski yields; the printed form of the statement in circulation uses
det(G1) as the base instead, which the expansion does not support, so
both variants are computed and reported (``remainder`` / ``rhs`` follow
the derivation, ``remainder_printed`` / ``rhs_printed`` the printed form).

Every check returns an InequalityReport with the verdict PASS, FAIL or
HYPOTHESIS_NOT_MET plus all determinants, margins and hypothesis data
needed to audit or replay it.
"""

from __future__ import annotations

import math

from dataclasses import dataclass, field

import numpy as np

from .covariance import (
    CovarianceMatrix,
    commutator_bound_matrix,
    covariance_matrix,
)
from .errors import InternalConsistencyError
from .monotone import (
    Kernel,
    MonotoneFunction,
    asymmetric_kernel,
    classical_kernel,
    symmetric_kernel,
)
from .states import DensityMatrix, validate_observable_tuple

# Determinant comparisons get slack proportional to the larger side.
_DET_TOL = 1e-9

# Kernel dominance slack, relative to the larger kernel value at the point.
_KERNEL_TOL = 1e-12

# Condition number above which a report is flagged as ill-conditioned.
_COND_WARN = 1e12

# G1 - G2 must be positive semidefinite when the hypothesis holds on the
# spectrum pairs; an eigenvalue below this relative slack is an engine bug.
_PSD_GATE = 1e-8

PASS = "PASS"
FAIL = "FAIL"
HYPOTHESIS_NOT_MET = "HYPOTHESIS_NOT_MET"


@dataclass(frozen=True)
class HypothesisReport:
    """Result of sampling a pointwise kernel (or ratio) hypothesis."""

    ok: bool
    min_margin: float
    witness: tuple[float, float] | None
    points: int
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "min_margin": self.min_margin,
            "witness": list(self.witness) if self.witness is not None else None,
            "points": self.points,
            "note": self.note,
        }


@dataclass(frozen=True)
class InequalityReport:
    """One checked inequality: verdict, sides, margin, and the audit trail."""

    name: str
    verdict: str
    lhs: float
    rhs: float
    margin: float
    tol: float
    hypothesis: HypothesisReport | None = None
    remainder: float | None = None
    components: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tol": self.tol,
            "hypothesis": self.hypothesis.to_dict() if self.hypothesis else None,
            "remainder": self.remainder,
            "components": dict(self.components),
            "warnings": list(self.warnings),
        }


# ---------------------------------------------------------------------------
# remainder and Minkowski building blocks
# ---------------------------------------------------------------------------


def binomial_remainder(det_base: float, det_diff: float, N: int) -> float:
    """R = sum_{k=1}^{N-1} C(N, k) base^(k/N) diff^((N-k)/N).

    Zero when N = 1 (empty sum).  Both determinant arguments must be
    nonnegative; fractional powers of negative inputs are undefined here.
    """
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"tuple size N must be a positive integer, got {N!r}")
    if det_base < 0.0 or det_diff < 0.0:
        raise ValueError(
            f"remainder needs nonnegative determinants, got {det_base!r}, {det_diff!r}"
        )
    total = 0.0
    for k in range(1, N):
        total += (
            math.comb(N, k)
            * det_base ** (k / N)
            * det_diff ** ((N - k) / N)
        )
    return total


def _clamped_det(value: float, scale: float) -> float:
    """Clamp a barely negative determinant to zero before fractional powers."""
    if value < 0.0 and value > -_DET_TOL * max(1.0, scale):
        return 0.0
    return value


def minkowski_check(p, q, tol: float = _DET_TOL) -> dict:
    """Check det(P + Q)^(1/N) >= det P^(1/N) + det Q^(1/N) for PSD P, Q.

    Returns a dict with the three root terms, the gap, and ok.  Raises
    ValueError if either matrix is not symmetric positive semidefinite
    beyond roundoff slack.
    """
    pm = np.asarray(p, dtype=float)
    qm = np.asarray(q, dtype=float)
    if pm.shape != qm.shape or pm.ndim != 2 or pm.shape[0] != pm.shape[1]:
        raise ValueError(f"need square matrices of equal shape, got {pm.shape}, {qm.shape}")
    nn = pm.shape[0]
    for name, m in (("P", pm), ("Q", qm)):
        scale = max(1.0, float(np.max(np.abs(m))))
        if float(np.max(np.abs(m - m.T))) > 1e-9 * scale:
            raise ValueError(f"{name} is not symmetric")
        if float(np.linalg.eigvalsh(m)[0]) < -_DET_TOL * scale:
            raise ValueError(f"{name} is not positive semidefinite")
    det_p = float(np.linalg.det(pm))
    det_q = float(np.linalg.det(qm))
    det_sum = float(np.linalg.det(pm + qm))
    scale = max(abs(det_p), abs(det_q), abs(det_sum), 1.0)
    root = 1.0 / nn
    lhs = max(det_sum, 0.0) ** root
    rhs = max(det_p, 0.0) ** root + max(det_q, 0.0) ** root
    gap = lhs - rhs
    return {
        "lhs_root": lhs,
        "rhs_roots": rhs,
        "gap": gap,
        "ok": bool(gap >= -tol * max(1.0, scale ** root)),
    }


# ---------------------------------------------------------------------------
# hypothesis sampling
# ---------------------------------------------------------------------------


def _spectrum_pairs(lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.repeat(lam, lam.size), np.tile(lam, lam.size)


def _range_grid(lam: np.ndarray, grid_points: int) -> tuple[np.ndarray, np.ndarray]:
    """A log grid over [min spectrum, max spectrum] squared."""
    lo, hi = float(lam.min()), float(lam.max())
    if hi > lo and grid_points > 1:
        axis = np.geomspace(lo, hi, grid_points)
    else:
        axis = np.array([lo])
    gx, gy = np.meshgrid(axis, axis)
    return gx.ravel(), gy.ravel()


def kernel_dominance(
    g1: Kernel, g2: Kernel, x: np.ndarray, y: np.ndarray, note: str = ""
) -> HypothesisReport:
    """Sample g1 >= g2 on given points, margins relative to kernel scale."""
    v1 = np.asarray(g1(x, y), dtype=float)
    v2 = np.asarray(g2(x, y), dtype=float)
    margins = (v1 - v2) / np.maximum(1.0, np.maximum(np.abs(v1), np.abs(v2)))
    k = int(np.argmin(margins))
    min_margin = float(margins[k])
    ok = min_margin >= -_KERNEL_TOL
    witness = None if ok else (float(x[k]), float(y[k]))
    return HypothesisReport(
        ok=ok, min_margin=min_margin, witness=witness, points=int(x.size), note=note
    )


def check_function_ordering(
    f1: MonotoneFunction,
    f2: MonotoneFunction,
    points: int = 200,
    lo: float = 1e-6,
    hi: float = 1e6,
) -> HypothesisReport:
    """Sample the ordering f1(0)/f1(t) >= f2(0)/f2(t) on a log grid.

    This pointwise ordering is exactly what makes the asymmetric kernel of
    f1 dominate that of f2 (and likewise the symmetric kernels), so it is
    the gate for comparing two functions' covariances.  The ratio is
    bounded by f(0) <= 1/2, so absolute margins are meaningful.
    """
    t = np.geomspace(lo, hi, points)
    margins = f1.zero / np.asarray(f1(t)) - f2.zero / np.asarray(f2(t))
    k = int(np.argmin(margins))
    min_margin = float(margins[k])
    ok = min_margin >= -_KERNEL_TOL
    witness = None if ok else (float(t[k]), float(t[k]))
    return HypothesisReport(
        ok=ok,
        min_margin=min_margin,
        witness=witness,
        points=points,
        note=f"ordering {f1.label} >= {f2.label}",
    )


# ---------------------------------------------------------------------------
# main determinant inequality
# ---------------------------------------------------------------------------


def _det_tol(lhs: float, rhs: float, tol_scale: float) -> float:
    return tol_scale * max(1.0, abs(lhs), abs(rhs))


def _condition_warnings(*matrices: CovarianceMatrix) -> list[str]:
    warns = []
    for m in matrices:
        if m.kind == "commutator" or m.N == 0:
            continue
        eigs = np.abs(np.linalg.eigvalsh(m.entries))
        top = float(eigs.max(initial=0.0))
        bottom = float(eigs.min(initial=0.0))
        if top > 0.0 and (bottom == 0.0 or top / bottom > _COND_WARN):
            warns.append(f"ill_conditioned[{m.label}]")
    return warns


def check_main_inequality(
    density: DensityMatrix,
    observables,
    g1: Kernel,
    g2: Kernel,
    grid_points: int = 40,
    tol_scale: float = _DET_TOL,
    name: str | None = None,
) -> InequalityReport:
    """The determinant inequality with binomial remainder for g1 >= g2.

    Steps: (a) sample the dominance hypothesis g1 >= g2 on every spectrum
    pair of D and a log grid over the spectrum range; a violation yields
    HYPOTHESIS_NOT_MET with the witness point.  (b) Build G1, G2 on the
    centred observables, check G1 - G2 is positive semidefinite (it must
    be whenever the hypothesis holds on the spectrum pairs, which are the
    only points the matrices ever evaluate the kernels at), and compare

        lhs = det G1    against    rhs = det G2 + det(G1 - G2) + R.

    Barely negative determinants are clamped to zero for the fractional
    powers in R; raw values are what enter the sums and the report.
    """
    lam = density.eigenvalues
    px, py = _spectrum_pairs(lam)
    pairs_hyp = kernel_dominance(
        g1, g2, px, py, note=f"{g1.label} >= {g2.label} on spectrum pairs"
    )
    gx, gy = _range_grid(lam, grid_points)
    x = np.concatenate([px, gx])
    y = np.concatenate([py, gy])
    hypothesis = kernel_dominance(g1, g2, x, y, note=f"{g1.label} >= {g2.label}")

    mat1 = covariance_matrix(density, observables, kind="generic", kernel=g1)
    mat2 = covariance_matrix(density, observables, kind="generic", kernel=g2)
    nn = mat1.N
    diff = mat1.entries - mat2.entries
    diff = 0.5 * (diff + diff.T)
    diff_min_eig = float(np.linalg.eigvalsh(diff)[0])
    diff_scale = max(1.0, float(np.max(np.abs(diff))))
    if pairs_hyp.ok and diff_min_eig < -_PSD_GATE * diff_scale:
        raise InternalConsistencyError(
            f"G1 - G2 has eigenvalue {diff_min_eig:.3e} although the kernel "
            f"hypothesis {g1.label} >= {g2.label} holds on the spectrum pairs"
        )

    det_g1 = mat1.det()
    det_g2 = mat2.det()
    det_diff = float(np.linalg.det(diff))
    det_scale = max(abs(det_g1), abs(det_g2), abs(det_diff))

    base = _clamped_det(det_g2, det_scale)
    base_printed = _clamped_det(det_g1, det_scale)
    spread = _clamped_det(det_diff, det_scale)
    if base < 0.0 or spread < 0.0:
        # Deeply negative determinant under a failed hypothesis: no
        # meaningful fractional powers exist, report the remainder as nan.
        remainder = float("nan")
        remainder_printed = float("nan")
    else:
        remainder = binomial_remainder(base, spread, nn)
        remainder_printed = binomial_remainder(max(base_printed, 0.0), spread, nn)

    lhs = det_g1
    rhs = det_g2 + det_diff + remainder
    tol = _det_tol(lhs, rhs, tol_scale)
    margin = lhs - rhs
    if not hypothesis.ok:
        verdict = HYPOTHESIS_NOT_MET
    elif math.isnan(rhs):
        verdict = FAIL
    else:
        verdict = PASS if margin >= -tol else FAIL

    mink = minkowski_check(mat2.entries, diff, tol=tol_scale) if pairs_hyp.ok else None

    warnings = _condition_warnings(mat1, mat2)
    components = {
        "det_g1": det_g1,
        "det_g2": det_g2,
        "det_diff": det_diff,
        "remainder_printed": remainder_printed,
        "rhs_printed": det_g2 + det_diff + remainder_printed,
        "diff_min_eigenvalue": diff_min_eig,
        "spectrum_pairs_ok": pairs_hyp.ok,
        "minkowski": mink,
        "g1": g1.label,
        "g2": g2.label,
        "n": density.n,
        "N": nn,
    }
    return InequalityReport(
        name=name or f"main[{g1.label}>={g2.label}]",
        verdict=verdict,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        tol=tol,
        hypothesis=hypothesis,
        remainder=remainder,
        components=components,
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# derived checks
# ---------------------------------------------------------------------------


def check_hierarchy(
    density: DensityMatrix,
    observables,
    f: MonotoneFunction,
    grid_points: int = 40,
    tol_scale: float = _DET_TOL,
) -> list[InequalityReport]:
    """The three-rung chain classical >= symmetric >= asymmetric for one f.

    Returns the main-inequality report for each adjacent pair plus the
    classical-vs-asymmetric composition.  All three hypotheses hold for
    every catalog function, so any non-PASS verdict is a finding.
    """
    cl = classical_kernel()
    sym = symmetric_kernel(f)
    asym = asymmetric_kernel(f)
    pairs = [
        (cl, sym, f"hierarchy:cl>=s[{f.label}]"),
        (sym, asym, f"hierarchy:s>=as[{f.label}]"),
        (cl, asym, f"hierarchy:cl>=as[{f.label}]"),
    ]
    return [
        check_main_inequality(
            density, observables, g1, g2,
            grid_points=grid_points, tol_scale=tol_scale, name=name,
        )
        for g1, g2, name in pairs
    ]


def check_cross(
    density: DensityMatrix,
    observables,
    f1: MonotoneFunction,
    f2: MonotoneFunction,
    direction: str = "asym_vs_sym",
    grid_points: int = 40,
    tol_scale: float = _DET_TOL,
    ratio_points: int = 200,
) -> InequalityReport:
    """Cross comparisons between the asymmetric side of one function and
    the symmetric side of another.

    direction "asym_vs_sym" tests g_as[f1] >= g_s[f2] under the ratio
    hypothesis  f1(0)/f1(t) >= (f2(0)/f2(t)) (t+1)^2/(t-1)^2,  which is
    equivalent to the kernel dominance away from x = y; at x = y it also
    needs f2(0) = 0.  direction "sym_vs_asym" tests g_s[f1] >= g_as[f2]
    and samples the reversed ratio; that reversed inequality is the
    stated hypothesis of the symmetric-over-asymmetric comparison but is
    not by itself equivalent to the kernel dominance, so the kernel-level
    sampling inside the main check remains the operative gate and can
    still return HYPOTHESIS_NOT_MET on its own.
    """
    if direction not in ("asym_vs_sym", "sym_vs_asym"):
        raise ValueError(f"unknown cross direction {direction!r}")
    t = np.geomspace(1e-6, 1e6, ratio_points)
    t = t[np.abs(t - 1.0) > 1e-6]
    r1 = f1.zero / np.asarray(f1(t))
    r2 = f2.zero / np.asarray(f2(t)) * (t + 1.0) ** 2 / (t - 1.0) ** 2
    if direction == "asym_vs_sym":
        margins = r1 - r2
        note = f"ratio {f1.label} vs {f2.label} (asym side must dominate)"
    else:
        margins = r2 - r1
        note = f"ratio {f2.label} vs {f1.label} (printed hypothesis, reversed)"
    k = int(np.argmin(margins))
    ratio_ok = bool(margins[k] >= -_KERNEL_TOL)
    witness = None if ratio_ok else (float(t[k]), float(t[k]))
    if direction == "asym_vs_sym" and f2.zero > _KERNEL_TOL:
        # inside the excluded window |t - 1| < 1e-6 the factor diverges, and
        # at x = y itself the asymmetric kernel vanishes while the symmetric
        # one equals 2 f2(0) x > 0, so the hypothesis cannot hold there
        ratio_ok = False
        witness = (1.0, 1.0)
        note += "; fails at x = y since f2(0) > 0"
    ratio_hyp = HypothesisReport(
        ok=ratio_ok,
        min_margin=float(margins[k]),
        witness=witness,
        points=int(t.size),
        note=note,
    )
    if direction == "asym_vs_sym":
        g1, g2 = asymmetric_kernel(f1), symmetric_kernel(f2)
        name = f"cross:as[{f1.label}]>=s[{f2.label}]"
    else:
        g1, g2 = symmetric_kernel(f1), asymmetric_kernel(f2)
        name = f"cross:s[{f1.label}]>=as[{f2.label}]"
    report = check_main_inequality(
        density, observables, g1, g2,
        grid_points=grid_points, tol_scale=tol_scale, name=name,
    )
    components = dict(report.components)
    components["ratio_hypothesis"] = ratio_hyp.to_dict()
    verdict = report.verdict if ratio_ok else HYPOTHESIS_NOT_MET
    return InequalityReport(
        name=name,
        verdict=verdict,
        lhs=report.lhs,
        rhs=report.rhs,
        margin=report.margin,
        tol=report.tol,
        hypothesis=report.hypothesis,
        remainder=report.remainder,
        components=components,
        warnings=report.warnings,
    )


def check_robertson_schrodinger(
    density: DensityMatrix,
    observables,
    tol_scale: float = _DET_TOL,
    name: str | None = None,
) -> InequalityReport:
    """det of the classical covariance matrix >= det of the commutator bound.

    The N = 2 case is the Schrodinger (hence Robertson) uncertainty
    relation in determinant form; odd N makes the right side zero.
    """
    obs = validate_observable_tuple(observables, density.n)
    cov = covariance_matrix(density, obs, kind="classical")
    bound = commutator_bound_matrix(density, obs)
    lhs = cov.det()
    rhs = bound.det()
    if len(obs) % 2 == 1 and abs(rhs) > _det_tol(lhs, rhs, tol_scale):
        raise InternalConsistencyError(
            f"commutator bound determinant should vanish for odd N, got {rhs:.3e}"
        )
    tol = _det_tol(lhs, rhs, tol_scale)
    margin = lhs - rhs
    verdict = PASS if margin >= -tol else FAIL
    return InequalityReport(
        name=name or f"robertson[N={len(obs)}]",
        verdict=verdict,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        tol=tol,
        hypothesis=None,
        components={
            "det_cov": lhs,
            "det_commutator_bound": rhs,
            "n": density.n,
            "N": len(obs),
        },
        warnings=tuple(_condition_warnings(cov)),
    )
