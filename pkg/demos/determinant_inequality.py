"""The determinant inequality with binomial remainder, on one instance.

For kernels g1 >= g2 (here: classical vs asymmetric-sld on a qubit) the
covariance matrices they induce satisfy

    det G1 >= det G2 + det(G1 - G2) + R,
    R = sum_{k=1}^{N-1} C(N,k) det(G2)^(k/N) det(G1-G2)^((N-k)/N),

which is the Minkowski determinant inequality det(P+Q)^(1/N) >=
det(P)^(1/N) + det(Q)^(1/N) expanded at P = G2, Q = G1 - G2.  On the
diagonal qubit with (sigma_x, sigma_y) both matrices are multiples of
the identity, Minkowski is tight, and the inequality becomes an exact
equality -- every digit checkable by hand.

The script also evaluates the variant with remainder base det(G1) that
circulates in print.  On this same instance that variant's right side
EXCEEDS the left side, so it cannot be the theorem; the expansion-backed
base det(G2) is what the package verifies (both are always reported).

Run: python3 demos/determinant_inequality.py
"""

import numpy as np

from qcovdet import (
    DensityMatrix,
    SLD,
    asymmetric_kernel,
    check_main_inequality,
    classical_kernel,
    sample_instance,
)

SX = np.array([[0, 1], [1, 0]], complex)
SY = np.array([[0, -1j], [1j, 0]], complex)


def show(rep):
    c = rep.components
    print(f"  det G1            = {c['det_g1']:.10f}   (lhs)")
    print(f"  det G2            = {c['det_g2']:.10f}")
    print(f"  det (G1 - G2)     = {c['det_diff']:.10f}")
    print(f"  remainder R       = {rep.remainder:.10f}")
    print(f"  rhs               = {rep.rhs:.10f}")
    print(f"  margin            = {rep.margin:.3e}   -> {rep.verdict}")
    print(f"  variant base detG1: R' = {c['remainder_printed']:.10f},"
          f" rhs' = {c['rhs_printed']:.10f}"
          + ("  (exceeds lhs!)" if c["rhs_printed"] > rep.lhs + rep.tol else ""))


def main():
    density = DensityMatrix(np.diag([0.7, 0.3]))
    g1 = classical_kernel()
    g2 = asymmetric_kernel(SLD)

    print("qubit D = diag(0.7, 0.3), obs = (sigma_x, sigma_y)")
    print(f"kernel pair: g1 = {g1.label}, g2 = {g2.label}")
    print("-" * 68)
    rep = check_main_inequality(density, [SX, SY], g1, g2)
    show(rep)
    print()
    print("here G1 = I and G2 = (2p-1)^2 I = 0.16 I, so with N = 2:")
    print("  rhs = 0.16^2 + 0.84^2 + 2*0.16*0.84 = (0.16 + 0.84)^2 = 1 = lhs")
    print("(Minkowski is an equality for proportional matrices).  The det G1")
    print("based variant would add 2*sqrt(1*0.84^2) = 1.68 instead of 0.2688")
    print("and overshoot the left side: base det G2 is the correct one.")
    print()

    print("a random 3-level instance (seed 81), same kernel pair")
    print("-" * 68)
    density, obs = sample_instance(3, 2, 81)
    rep = check_main_inequality(density, obs, g1, g2)
    show(rep)
    print()
    print("random instances usually leave real slack; the hypothesis block")
    print("records where g1 >= g2 was sampled:")
    print(f"  {rep.hypothesis.note}: ok={rep.hypothesis.ok},"
          f" {rep.hypothesis.points} points,"
          f" min margin {rep.hypothesis.min_margin:.3e}")
    print()

    print("swapping the kernels reverses the hypothesis, and the check says")
    print("so instead of reporting a broken inequality:")
    rep = check_main_inequality(density, obs, g2, g1)
    print(f"  verdict = {rep.verdict}, witness = {rep.hypothesis.witness}")


if __name__ == "__main__":
    main()
