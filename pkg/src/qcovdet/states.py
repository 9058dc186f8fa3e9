"""Density matrices, observables, and reproducible random instances.

A DensityMatrix wraps a validated faithful state: Hermitian, unit trace,
strictly positive spectrum.  The eigendecomposition is computed once at
construction (eigenvalues sorted descending) and reused by every spectral
formula downstream.

Sampling uses the counter-based Philox generator keyed on (seed, purpose)
so that densities, observables and unitaries drawn with the same seed come
from independent streams, and so that any instance can be reconstructed
from (n, N, seed, min_gap) alone.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

_HERMITIAN_TOL = 1e-12
_TRACE_TOL = 1e-12

# Philox key words marking what a stream is for.
_DENSITY_TAG = 0xD0
_OBSERVABLE_TAG = 0x0B
_UNITARY_TAG = 0x07

# Observable seeds inside one instance are seed * _SEED_STRIDE + 1 + i, so
# streams never collide across instances as long as N stays below the stride.
_SEED_STRIDE = 64


def _as_square_complex(entries, what: str) -> np.ndarray:
    arr = np.asarray(entries, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{what} must be a square matrix, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValidationError(f"{what} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what} contains a nan or inf entry")
    return arr


def _hermitian_defect(arr: np.ndarray) -> float:
    return float(np.max(np.abs(arr - arr.conj().T), initial=0.0))


class DensityMatrix:
    """A faithful density matrix with its cached eigendecomposition.

    Parameters
    ----------
    entries : array_like
        n x n complex matrix.  Must be Hermitian to within 1e-12 in max
        norm, have trace within 1e-12 of one, and be strictly positive.
    positivity_floor : float
        Smallest admissible eigenvalue; below it construction fails.

    The stored matrix and spectral data are read-only views.  Eigenvalues
    are sorted in descending order, eigenvector columns to match.
    """

    def __init__(self, entries, positivity_floor: float = 1e-10):
        arr = _as_square_complex(entries, "density matrix")
        defect = _hermitian_defect(arr)
        if defect > _HERMITIAN_TOL:
            raise ValidationError(
                f"density matrix is not Hermitian: max |D - D*| = {defect:.3e}"
            )
        tr = np.trace(arr)
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValidationError(f"density matrix trace is {tr:.15g}, expected 1")
        arr = 0.5 * (arr + arr.conj().T)
        w, u = np.linalg.eigh(arr)
        order = np.argsort(w)[::-1]
        w = w[order]
        u = u[:, order]
        if w[-1] < positivity_floor or w[-1] <= 0.0:
            raise ValidationError(
                f"density matrix is not strictly positive: smallest eigenvalue "
                f"{w[-1]:.3e} is below the floor {positivity_floor:.3e}"
            )
        for a in (arr, w, u):
            a.setflags(write=False)
        self._matrix = arr
        self._eigenvalues = w
        self._eigenvectors = u

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def eigenvalues(self) -> np.ndarray:
        """Spectrum in descending order; strictly positive."""
        return self._eigenvalues

    @property
    def eigenvectors(self) -> np.ndarray:
        """Unitary whose k-th column is the eigenvector of eigenvalues[k]."""
        return self._eigenvectors

    def __repr__(self) -> str:
        lam = ", ".join(f"{v:.4g}" for v in self._eigenvalues)
        return f"DensityMatrix(n={self.n}, spectrum=[{lam}])"


def validate_observable(entries, n: int | None = None) -> np.ndarray:
    """Check one observable: square, finite, Hermitian; return as complex array.

    The Hermiticity tolerance scales with the largest entry so large
    observables are not rejected for plain roundoff.
    """
    arr = _as_square_complex(entries, "observable")
    if n is not None and arr.shape[0] != n:
        raise ValidationError(
            f"observable has dimension {arr.shape[0]}, expected {n}"
        )
    scale = max(1.0, float(np.max(np.abs(arr))))
    defect = _hermitian_defect(arr)
    if defect > _HERMITIAN_TOL * scale:
        raise ValidationError(
            f"observable is not Hermitian: max |A - A*| = {defect:.3e}"
        )
    return arr


def validate_observable_tuple(observables, n: int | None = None) -> list[np.ndarray]:
    """Validate a tuple of observables of matching dimension, none zero."""
    obs = list(observables)
    if not obs:
        raise ValidationError("observable tuple is empty")
    first = validate_observable(obs[0], n)
    dim = first.shape[0]
    out = [first]
    for k, a in enumerate(obs[1:], start=1):
        arr = validate_observable(a, dim)
        out.append(arr)
    for k, arr in enumerate(out):
        if np.max(np.abs(arr)) == 0.0:
            raise ValidationError(f"observable {k} is identically zero")
    return out


def center(a, density: DensityMatrix) -> np.ndarray:
    """A - Tr(D A) I, the observable recentred to zero mean in state D."""
    arr = validate_observable(a, density.n)
    mean = np.trace(density.matrix @ arr).real
    return arr - mean * np.eye(density.n)


def to_eigenbasis(a, density: DensityMatrix) -> np.ndarray:
    """Conjugate A into the eigenbasis of D: U* A U."""
    arr = validate_observable(a, density.n)
    u = density.eigenvectors
    return u.conj().T @ arr @ u


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def _generator(seed: int, tag: int) -> np.random.Generator:
    seed = int(seed)
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), tag]))


def _complex_ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def sample_density(n: int, seed: int, min_gap: float = 0.01) -> DensityMatrix:
    """Draw a faithful random density matrix, deterministically from seed.

    A complex Ginibre matrix G gives the Wishart form G G*, which is
    normalized to unit trace and then mixed with the maximally mixed state:

        D = (B + min_gap I) / (1 + n min_gap),   B = G G* / Tr(G G*)

    so every eigenvalue is at least min_gap / (1 + n min_gap) by
    construction, keeping the state safely away from the boundary.
    """
    if n < 1:
        raise ValueError(f"dimension must be at least 1, got {n}")
    if min_gap < 0.0:
        raise ValueError(f"min_gap must be nonnegative, got {min_gap}")
    rng = _generator(seed, _DENSITY_TAG)
    g = _complex_ginibre(rng, n)
    w = g @ g.conj().T
    w = w / np.trace(w).real
    w = (w + min_gap * np.eye(n)) / (1.0 + n * min_gap)
    w = 0.5 * (w + w.conj().T)
    w = w / np.trace(w).real
    floor = 0.999 * min_gap / (1.0 + n * min_gap) if min_gap > 0.0 else 0.0
    return DensityMatrix(w, positivity_floor=floor)


def sample_observable(n: int, seed: int) -> np.ndarray:
    """Draw an n x n GUE observable H = (G + G*)/2, deterministic in seed."""
    if n < 1:
        raise ValueError(f"dimension must be at least 1, got {n}")
    rng = _generator(seed, _OBSERVABLE_TAG)
    g = _complex_ginibre(rng, n)
    return 0.5 * (g + g.conj().T)


def sample_unitary(n: int, seed: int) -> np.ndarray:
    """Draw a Haar-distributed unitary via QR with the phase convention fixed."""
    if n < 1:
        raise ValueError(f"dimension must be at least 1, got {n}")
    rng = _generator(seed, _UNITARY_TAG)
    g = _complex_ginibre(rng, n)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_instance(
    n: int, N: int, seed: int, min_gap: float = 0.01
) -> tuple[DensityMatrix, list[np.ndarray]]:
    """Draw a full test instance: one density matrix and N observables.

    Fully determined by (n, N, seed, min_gap), so any sweep record that
    carries these four numbers can be replayed exactly.
    """
    if not 1 <= N < _SEED_STRIDE:
        raise ValueError(f"observable count must be in [1, {_SEED_STRIDE - 1}], got {N}")
    density = sample_density(n, seed, min_gap)
    obs = [
        sample_observable(n, int(seed) * _SEED_STRIDE + 1 + i) for i in range(N)
    ]
    return density, obs
