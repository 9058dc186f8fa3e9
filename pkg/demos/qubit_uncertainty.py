"""Scalar uncertainty bounds on a qubit, worked to closed form.

State D = diag(p, 1-p), observables sigma_x and sigma_y.  Everything is
computable by hand here, which makes the qubit the desk check for the
whole machinery:

    Var(sigma_x) = Var(sigma_y) = 1            (after centring)
    det Cov      = 1
    commutator bound M = [[0, 2p-1], [-(2p-1), 0]],  det M = (2p-1)^2

so the determinant form of the Robertson/Schrodinger bound reads
1 >= (2p-1)^2, saturated as p -> 1 (pure state), slack 1 at p = 1/2
(maximally mixed, where the state commutes with nothing usefully).

Run: python3 demos/qubit_uncertainty.py
"""

import numpy as np

from qcovdet import (
    DensityMatrix,
    catalog,
    asymmetric_covariance,
    check_robertson_schrodinger,
    commutator_bound_matrix,
    covariance_matrix,
    symmetric_covariance,
)

SX = np.array([[0, 1], [1, 0]], complex)
SY = np.array([[0, -1j], [1j, 0]], complex)


def main():
    print("determinant uncertainty bound, D = diag(p, 1-p), obs = (sx, sy)")
    print("-" * 68)
    print(f"{'p':>6} {'det Cov':>10} {'(2p-1)^2':>10} {'margin':>12} {'verdict':>8}")
    for p in (0.5, 0.6, 0.7, 0.9, 0.99, 0.999):
        density = DensityMatrix(np.diag([p, 1 - p]))
        rep = check_robertson_schrodinger(density, [SX, SY])
        print(f"{p:>6.3f} {rep.lhs:>10.6f} {rep.rhs:>10.6f} "
              f"{rep.margin:>12.6f} {rep.verdict:>8}")
    print()
    print("the bound tightens toward purity and is vacuous at p = 1/2.")
    print()

    p = 0.7
    density = DensityMatrix(np.diag([p, 1 - p]))
    print(f"at p = {p} the two matrices behind the bound are")
    mat = covariance_matrix(density, [SX, SY], kind="classical")
    com = commutator_bound_matrix(density, [SX, SY])
    print(f"  Cov =\n{np.array2string(mat.entries, precision=6)}")
    print(f"  M   =\n{np.array2string(com.entries, precision=6)}")
    print(f"  det Cov = {mat.det():.6f},  det M = (2p-1)^2 = {com.det():.6f}")
    print()

    print("the quantum covariances interpolate between those two numbers;")
    print(f"for sigma_x alone (variance 1 classically) at p = {p}:")
    print(f"{'f':>10} {'qvar_s':>10} {'qvar_as':>10}")
    for f in catalog():
        qs = symmetric_covariance(density, f, SX, SX)
        qa = asymmetric_covariance(density, f, SX, SX)
        print(f"{f.label:>10} {qs:>10.6f} {qa:>10.6f}")
    print()
    print("non-regular functions (f(0) = 0) have identically zero quantum")
    print("covariances: only the regular rows carry information.")


if __name__ == "__main__":
    main()
