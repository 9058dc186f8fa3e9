"""Spectral covariance machinery.

Everything reduces to one bilinear form.  With D = sum_k lambda_k P_k and
A' = U* A U in the eigenbasis of D,

    (A, B)_{D,g} = sum_{k,l} A'_{lk} B'_{kl} g(lambda_k, lambda_l)

for a kernel g on the spectrum.  Specializations:

    classical covariance   g = (x + y)/2           on centred observables
    metric inner product   g = 1/m_f
    antisymmetric part     g = f(0)(x - y)^2 / (2 m_f)
    symmetric part         g = f(0)(x + y)^2 / (2 m_f)

Each specialization also has an independent second evaluation path (trace
formula, commutator, anticommutator) used for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, ValidationError
from .monotone import (
    Kernel,
    MonotoneFunction,
    asymmetric_kernel,
    classical_kernel,
    inverse_mean_kernel,
    symmetric_kernel,
)
from .states import DensityMatrix, center, to_eigenbasis, validate_observable, validate_observable_tuple

# An inner product of Hermitian inputs under a symmetric kernel is real up
# to roundoff; a larger imaginary residue means the inputs or the engine
# broke.  The matrix builder uses a looser threshold because its entries
# accumulate more terms.
_IMAG_SLACK = 1e-10
_MATRIX_IMAG_SLACK = 1e-8

# Positive semidefinite up to this relative slack on the smallest eigenvalue.
_PSD_SLACK = 1e-9


def _real_part(value: complex, scale: float, slack: float, what: str) -> float:
    residue = abs(value.imag)
    if residue > slack * max(scale, 1e-300):
        raise InternalConsistencyError(
            f"{what} should be real but has imaginary residue {residue:.3e} "
            f"against scale {scale:.3e}"
        )
    return float(value.real)


def _kernel_matrix(kernel: Kernel, lam: np.ndarray) -> np.ndarray:
    kmat = np.asarray(kernel(lam[:, None], lam[None, :]), dtype=float)
    if not np.all(np.isfinite(kmat)):
        raise ValueError(
            f"kernel {kernel.label} produced a non-finite value on the spectrum"
        )
    return kmat


def kernel_inner_complex(density: DensityMatrix, a, b, kernel: Kernel) -> complex:
    """(A, B)_{D,g} = sum_{k,l} A'_{lk} B'_{kl} g(lambda_k, lambda_l).

    The bilinear form itself, defined for arbitrary (not necessarily
    Hermitian) square matrices; complex in general.
    """
    arr_a = _as_square(a, density.n)
    arr_b = _as_square(b, density.n)
    u = density.eigenvectors
    ap = u.conj().T @ arr_a @ u
    bp = u.conj().T @ arr_b @ u
    kmat = _kernel_matrix(kernel, density.eigenvalues)
    return complex((ap.T * bp * kmat).sum())


def _as_square(a, n: int) -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.shape != (n, n):
        raise ValidationError(f"matrix has shape {arr.shape}, expected ({n}, {n})")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("matrix contains a nan or inf entry")
    return arr


def kernel_inner(density: DensityMatrix, a, b, kernel: Kernel) -> float:
    """(A, B)_{D,g} for Hermitian A, B: real, with the residue checked.

    Symmetric kernels on Hermitian inputs give a provably real value; the
    computed imaginary part is compared against the absolute-term scale
    and discarded only when negligible.
    """
    ap = to_eigenbasis(a, density)
    bp = to_eigenbasis(b, density)
    kmat = _kernel_matrix(kernel, density.eigenvalues)
    terms = ap.T * bp * kmat
    scale = float(np.sum(np.abs(terms)))
    return _real_part(
        complex(terms.sum()), scale, _IMAG_SLACK,
        f"inner product under kernel {kernel.label}",
    )


def metric_inner(density: DensityMatrix, a, b, f: MonotoneFunction) -> float:
    """<A, B>_{D,f} = (A, B) under the kernel 1/m_f: the monotone metric."""
    return kernel_inner(density, a, b, inverse_mean_kernel(f))


def covariance(density: DensityMatrix, a, b, method: str = "trace") -> float:
    """Symmetrized classical covariance of two observables in state D.

    method "trace" evaluates Re Tr(D A B) - Tr(D A) Tr(D B); method
    "spectral" evaluates the (x + y)/2 kernel form on centred inputs.
    The two agree to roundoff and are cross-checked in the test suite.
    """
    if method == "trace":
        arr_a = validate_observable(a, density.n)
        arr_b = validate_observable(b, density.n)
        d = density.matrix
        mean_a = np.trace(d @ arr_a).real
        mean_b = np.trace(d @ arr_b).real
        # Im Tr(DAB) is the commutator term, not an error; only the real
        # part enters the symmetrized covariance.
        second = np.trace(d @ arr_a @ arr_b).real
        return float(second) - mean_a * mean_b
    if method == "spectral":
        return kernel_inner(
            density, center(a, density), center(b, density), classical_kernel()
        )
    raise ValueError(f"unknown covariance method {method!r}")


def asymmetric_covariance(
    density: DensityMatrix, f: MonotoneFunction, a, b, method: str = "kernel"
) -> float:
    """Antisymmetric covariance: the commutator part of the f-metric.

    Kernel path: (A, B) under f(0)(x - y)^2 / (2 m_f).  Commutator path:
    (f(0)/2) <i[D, A], i[D, B]>_{D,f}.  Both are invariant under centring,
    and vanish identically for non-regular f.
    """
    if method == "kernel":
        return kernel_inner(density, a, b, asymmetric_kernel(f))
    if method == "commutator":
        if not f.is_regular:
            return 0.0
        arr_a = validate_observable(a, density.n)
        arr_b = validate_observable(b, density.n)
        d = density.matrix
        ca = 1j * (d @ arr_a - arr_a @ d)
        cb = 1j * (d @ arr_b - arr_b @ d)
        return 0.5 * f.zero * metric_inner(density, ca, cb, f)
    raise ValueError(f"unknown asymmetric covariance method {method!r}")


def symmetric_covariance(
    density: DensityMatrix, f: MonotoneFunction, a, b, method: str = "kernel"
) -> float:
    """Symmetric covariance: the anticommutator part of the f-metric.

    Kernel path: (A, B) under f(0)(x + y)^2 / (2 m_f).  Anticommutator
    path: (f(0)/2) <{D, A}, {D, B}>_{D,f}.  Unlike the antisymmetric part
    this does depend on the means; centring subtracts
    2 f(0) Tr(D A) Tr(D B).  For f = sld on centred observables it equals
    the classical covariance.
    """
    if method == "kernel":
        return kernel_inner(density, a, b, symmetric_kernel(f))
    if method == "anticommutator":
        if not f.is_regular:
            return 0.0
        arr_a = validate_observable(a, density.n)
        arr_b = validate_observable(b, density.n)
        d = density.matrix
        sa = d @ arr_a + arr_a @ d
        sb = d @ arr_b + arr_b @ d
        return 0.5 * f.zero * metric_inner(density, sa, sb, f)
    raise ValueError(f"unknown symmetric covariance method {method!r}")


# ---------------------------------------------------------------------------
# covariance matrices for observable tuples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CovarianceMatrix:
    """An N x N real covariance (or commutator-bound) matrix with context.

    kind is one of "classical", "symmetric", "asymmetric", "generic",
    "commutator".  Covariance kinds are symmetric positive semidefinite;
    the commutator kind is antisymmetric.  min_eigenvalue records the
    smallest eigenvalue (symmetric kinds) seen at the consistency check.
    """

    kind: str
    label: str
    entries: np.ndarray
    n: int
    N: int
    min_eigenvalue: float

    def det(self) -> float:
        return float(np.linalg.det(self.entries))

    def __post_init__(self):
        self.entries.setflags(write=False)


def _finalize_matrix(
    kind: str, label: str, raw: np.ndarray, n: int, scale: float
) -> CovarianceMatrix:
    """Realness / symmetry / positivity checks shared by every matrix kind."""
    big = max(scale, float(np.max(np.abs(raw))), 1e-300)
    residue = float(np.max(np.abs(raw.imag)))
    if residue > _MATRIX_IMAG_SLACK * big:
        raise InternalConsistencyError(
            f"{label} matrix has imaginary residue {residue:.3e} at scale {big:.3e}"
        )
    m = raw.real.copy()
    if kind == "commutator":
        defect = float(np.max(np.abs(m + m.T)))
        if defect > _MATRIX_IMAG_SLACK * big:
            raise InternalConsistencyError(
                f"{label} matrix should be antisymmetric, defect {defect:.3e}"
            )
        m = 0.5 * (m - m.T)
        min_eig = float("nan")
    else:
        defect = float(np.max(np.abs(m - m.T)))
        if defect > _MATRIX_IMAG_SLACK * big:
            raise InternalConsistencyError(
                f"{label} matrix should be symmetric, defect {defect:.3e}"
            )
        m = 0.5 * (m + m.T)
        eigs = np.linalg.eigvalsh(m)
        min_eig = float(eigs[0])
        if min_eig < -_PSD_SLACK * max(1.0, float(np.max(np.abs(m)))):
            raise InternalConsistencyError(
                f"{label} matrix is not positive semidefinite: "
                f"smallest eigenvalue {min_eig:.3e}"
            )
    return CovarianceMatrix(
        kind=kind, label=label, entries=m, n=n, N=m.shape[0], min_eigenvalue=min_eig
    )


def _centred_in_eigenbasis(
    density: DensityMatrix, observables
) -> tuple[np.ndarray, np.ndarray]:
    obs = validate_observable_tuple(observables, density.n)
    u = density.eigenvectors
    stack = np.empty((len(obs), density.n, density.n), dtype=complex)
    for i, a in enumerate(obs):
        ap = u.conj().T @ a @ u
        stack[i] = ap - np.trace(density.matrix @ a).real * np.eye(density.n)
    return stack, density.eigenvalues


def _gram(stack: np.ndarray, kmat: np.ndarray) -> tuple[np.ndarray, float]:
    """M_ij = sum_{k,l} A'(i)_{lk} K_{kl} A'(j)_{kl}, with the term scale."""
    raw = np.einsum("ilk,kl,jkl->ij", stack, kmat, stack)
    scale = float(
        np.einsum("ilk,kl,jkl->", np.abs(stack), np.abs(kmat), np.abs(stack))
    )
    return raw, scale


def covariance_matrix(
    density: DensityMatrix,
    observables,
    kind: str = "classical",
    f: MonotoneFunction | None = None,
    kernel: Kernel | None = None,
) -> CovarianceMatrix:
    """Build the N x N matrix [ (A_i - <A_i>, A_j - <A_j>)_{D,g} ]_ij.

    kind selects the kernel: "classical" needs nothing further,
    "symmetric" and "asymmetric" need f, "generic" needs an explicit
    kernel.  Observables are centred before the form is applied, which
    matters for the classical and symmetric kinds and is a no-op for the
    asymmetric one.
    """
    if kind not in ("classical", "symmetric", "asymmetric", "generic"):
        raise ValueError(f"unknown covariance matrix kind {kind!r}")
    if kind == "classical":
        g = classical_kernel()
        label = "classical"
    elif kind == "generic":
        if kernel is None:
            raise ValueError("kind 'generic' requires an explicit kernel")
        g = kernel
        label = f"generic[{kernel.label}]"
    else:
        if f is None:
            raise ValueError(f"kind {kind!r} requires a monotone function")
        g = symmetric_kernel(f) if kind == "symmetric" else asymmetric_kernel(f)
        label = f"{kind}[{f.label}]"
    stack, lam = _centred_in_eigenbasis(density, observables)
    kmat = _kernel_matrix(g, lam)
    raw, scale = _gram(stack, kmat)
    return _finalize_matrix(kind, label, raw, density.n, scale)


def commutator_bound_matrix(density: DensityMatrix, observables) -> CovarianceMatrix:
    """The antisymmetric matrix [-(i/2) Tr(D [A_h, A_j])]_hj.

    Its determinant is the commutator side of the determinant uncertainty
    inequalities: nonnegative for even N, zero for odd N.
    """
    obs = validate_observable_tuple(observables, density.n)
    d = density.matrix
    nn = len(obs)
    raw = np.zeros((nn, nn), dtype=complex)
    scale = 0.0
    for h in range(nn):
        dah = d @ obs[h]
        for j in range(nn):
            prod = dah @ obs[j]
            # -(i/2) Tr(D[A_h, A_j]) = Im Tr(D A_h A_j)
            raw[h, j] = np.trace(prod).imag
            scale = max(scale, float(np.sum(np.abs(prod))))
    return _finalize_matrix("commutator", "commutator-bound", raw, density.n, scale)
