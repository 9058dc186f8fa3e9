"""Operator monotone functions and the two-variable kernels they induce.

The catalog covers the standard normalized operator monotone functions on
(0, inf) with f(1) = 1 and f(x) = x f(1/x):

    sld         f(x) = (1 + x) / 2
    wy          f(x) = (sqrt(x) + 1)^2 / 4
    wyd:<beta>  f(x) = beta (1 - beta) (x - 1)^2
                       / ((x^beta - 1) (x^(1-beta) - 1)),  beta in [-1, 2]
    km          f(x) = (x - 1) / ln x

Each function induces a mean m_f(x, y) = y f(x/y) and, through it, the
covariance kernels used by the spectral inner products: the classical
kernel (x + y)/2, the symmetric kernel f(0) (x + y)^2 / (2 m_f), the
antisymmetric-side kernel f(0) (x - y)^2 / (2 m_f), and the inverse mean
1 / m_f.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DominanceViolationError

_FAMILIES = ("sld", "wy", "wyd", "km")

# Margin below which a difference kernel's negative values are treated as
# roundoff rather than a genuine ordering violation, relative to kernel scale.
_DOMINANCE_SLACK = 1e-12


def _as_positive_array(x, what: str):
    arr = np.asarray(x, dtype=float)
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} must be finite, got a nan or inf entry")
    if arr.size and np.any(arr <= 0.0):
        raise ValueError(f"{what} must be strictly positive, got min {arr.min()!r}")
    return arr


def _scalar_like(value: np.ndarray, template) -> float | np.ndarray:
    if np.isscalar(template) or getattr(template, "ndim", 1) == 0:
        return float(value)
    return value


# ---------------------------------------------------------------------------
# pointwise evaluation per family
# ---------------------------------------------------------------------------


def _eval_sld(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + x)


def _eval_wy(x: np.ndarray) -> np.ndarray:
    return 0.25 * (np.sqrt(x) + 1.0) ** 2


def _eval_km(x: np.ndarray) -> np.ndarray:
    # (x - 1)/ln x, continuously extended by 1 at x = 1.  Near 1 both the
    # difference and the log are individually accurate, so the plain ratio
    # is stable; only x == 1 itself needs the special case.
    out = np.ones_like(x)
    away = x != 1.0
    xa = x[away]
    out[away] = (xa - 1.0) / np.log(xa)
    return out


def _eval_wyd(beta: float, x: np.ndarray) -> np.ndarray:
    if beta in (0.0, 1.0):
        return _eval_km(x)
    out = np.ones_like(x)
    away = x != 1.0
    xa = x[away]
    lx = np.log(xa)
    # (x^b - 1)(x^(1-b) - 1) via expm1 keeps the denominator accurate for
    # beta near 0 or 1 and for x near 1.
    den = np.expm1(beta * lx) * np.expm1((1.0 - beta) * lx)
    num = beta * (1.0 - beta) * (xa - 1.0) ** 2
    out[away] = num / den
    return out


def _zero_of(family: str, beta: float | None) -> float:
    if family == "sld":
        return 0.5
    if family == "wy":
        return 0.25
    if family == "km":
        return 0.0
    assert family == "wyd"
    if 0.0 < beta < 1.0:
        return beta * (1.0 - beta)
    return 0.0


def _logmean(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Logarithmic mean (hi - lo)/(ln hi - ln lo), assuming 0 < lo <= hi.

    Written as d / log1p(d/lo) with d = hi - lo >= 0 so the log argument
    stays in log1p's accurate range at every ratio.
    """
    d = hi - lo
    out = np.array(lo, dtype=float, copy=True)
    pos = d > 0.0
    out[pos] = d[pos] / np.log1p(d[pos] / lo[pos])
    return out


@dataclass(frozen=True)
class MonotoneFunction:
    """One member of the operator monotone function catalog.

    family is one of "sld", "wy", "wyd", "km"; beta is required exactly
    for the wyd family and must lie in [-1, 2].
    """

    family: str
    beta: float | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(
                f"unknown function family {self.family!r}, expected one of {_FAMILIES}"
            )
        if self.family == "wyd":
            if self.beta is None:
                raise ValueError("wyd requires a beta parameter")
            beta = float(self.beta)
            if not math.isfinite(beta) or not -1.0 <= beta <= 2.0:
                raise ValueError(f"wyd beta must lie in [-1, 2], got {self.beta!r}")
            object.__setattr__(self, "beta", beta)
        elif self.beta is not None:
            raise ValueError(f"family {self.family!r} takes no beta parameter")

    # -- identity ----------------------------------------------------------

    @property
    def label(self) -> str:
        """Serialized name: "sld", "wy", "km", or "wyd:<beta>"."""
        if self.family == "wyd":
            return f"wyd:{self.beta:g}"
        return self.family

    def __str__(self) -> str:
        return self.label

    # -- pointwise values ----------------------------------------------------

    @property
    def zero(self) -> float:
        """Continuous extension f(0+).  Zero exactly for non-regular members."""
        return _zero_of(self.family, self.beta)

    @property
    def is_regular(self) -> bool:
        return self.zero > 0.0

    def __call__(self, x):
        """Evaluate f at x > 0 (scalar or array)."""
        arr = _as_positive_array(x, "argument of a monotone function")
        if self.family == "sld":
            val = _eval_sld(arr)
        elif self.family == "wy":
            val = _eval_wy(arr)
        elif self.family == "km":
            val = _eval_km(arr)
        else:
            val = _eval_wyd(self.beta, arr)
        return _scalar_like(val, x)

    def mean(self, x, y):
        """Induced mean m_f(x, y) = y f(x/y) for positive x, y.

        Evaluated with the smaller argument in the numerator of the ratio
        so the power terms of the wyd family never overflow, and with a
        dedicated logarithmic-mean path for km.  Symmetric by construction.
        """
        ax = _as_positive_array(x, "mean argument x")
        ay = _as_positive_array(y, "mean argument y")
        ax, ay = np.broadcast_arrays(ax, ay)
        if self.family == "sld":
            val = 0.5 * (ax + ay)
        elif self.family == "wy":
            val = 0.25 * (np.sqrt(ax) + np.sqrt(ay)) ** 2
        else:
            lo = np.minimum(ax, ay)
            hi = np.maximum(ax, ay)
            if self.family == "km" or self.beta in (0.0, 1.0):
                val = _logmean(lo, hi)
            else:
                val = hi * _eval_wyd(self.beta, lo / hi)
        return _scalar_like(val, x if np.ndim(x) >= np.ndim(y) else y)

    def on_matrix(self, H: np.ndarray) -> np.ndarray:
        """Apply f to a Hermitian matrix with positive spectrum."""
        H = np.asarray(H, dtype=complex)
        w, V = np.linalg.eigh(H)
        if np.any(w <= 0.0):
            raise ValueError(
                f"matrix argument must be positive definite, got eigenvalue {w.min():.3e}"
            )
        return (V * self(w)) @ V.conj().T


# Canonical members.  wyd members are built on demand via wyd(beta).
SLD = MonotoneFunction("sld")
WY = MonotoneFunction("wy")
KM = MonotoneFunction("km")


def wyd(beta: float) -> MonotoneFunction:
    return MonotoneFunction("wyd", float(beta))


def parse_function(text: str) -> MonotoneFunction:
    """Parse a serialized function name: sld | wy | km | wyd:<beta>."""
    name = text.strip().lower()
    if name in ("sld", "wy", "km"):
        return MonotoneFunction(name)
    if name.startswith("wyd:"):
        raw = name[4:]
        try:
            beta = float(raw)
        except ValueError:
            raise ValueError(f"bad wyd parameter {raw!r} in {text!r}") from None
        return MonotoneFunction("wyd", beta)
    raise ValueError(
        f"unknown monotone function {text!r}; expected sld, wy, km or wyd:<beta>"
    )


def catalog(betas=(-1.0, 0.3, 0.5, 1.5)) -> list[MonotoneFunction]:
    """Default roster: sld, wy, a spread of wyd members, km."""
    return [SLD, WY, *(wyd(b) for b in betas), KM]


# ---------------------------------------------------------------------------
# covariance kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Kernel:
    """A two-variable kernel g(x, y) on (0, inf)^2, evaluated vectorized.

    Built through the factory functions below; kind is one of "classical",
    "symmetric", "asymmetric", "inverse_mean", "difference", "custom".
    """

    kind: str
    label: str
    f: MonotoneFunction | None = None
    parts: tuple["Kernel", "Kernel"] | None = None
    fn: Callable | None = None

    def __call__(self, x, y):
        ax = _as_positive_array(x, "kernel argument x")
        ay = _as_positive_array(y, "kernel argument y")
        ax, ay = np.broadcast_arrays(ax, ay)
        val = self._eval(ax, ay)
        return _scalar_like(val, x if np.ndim(x) >= np.ndim(y) else y)

    def _eval(self, ax: np.ndarray, ay: np.ndarray) -> np.ndarray:
        if self.kind == "classical":
            return 0.5 * (ax + ay)
        if self.kind == "symmetric":
            return self.f.zero * (ax + ay) ** 2 / (2.0 * self.f.mean(ax, ay))
        if self.kind == "asymmetric":
            return self.f.zero * (ax - ay) ** 2 / (2.0 * self.f.mean(ax, ay))
        if self.kind == "inverse_mean":
            return 1.0 / self.f.mean(ax, ay)
        if self.kind == "custom":
            return np.asarray(self.fn(ax, ay), dtype=float)
        assert self.kind == "difference"
        hi = self.parts[0]._eval(ax, ay)
        lo = self.parts[1]._eval(ax, ay)
        d = hi - lo
        slack = _DOMINANCE_SLACK * np.maximum(1.0, np.abs(hi))
        bad = d < -slack
        if np.any(bad):
            k = np.argmax(np.where(bad, -d, -np.inf))
            idx = np.unravel_index(k, d.shape)
            raise DominanceViolationError(
                f"difference kernel {self.label} is negative at "
                f"(x, y) = ({ax[idx]:.6g}, {ay[idx]:.6g}): value {d[idx]:.3e}",
                x=float(ax[idx]),
                y=float(ay[idx]),
                value=float(d[idx]),
            )
        # values in (-slack, 0) are roundoff; clamp so callers get g >= 0
        return np.maximum(d, 0.0)

    def __str__(self) -> str:
        return self.label


def classical_kernel() -> Kernel:
    """g(x, y) = (x + y)/2, the kernel of classical covariance."""
    return Kernel(kind="classical", label="cl")


def symmetric_kernel(f: MonotoneFunction) -> Kernel:
    """g(x, y) = f(0) (x + y)^2 / (2 m_f(x, y)).  Identically zero for
    non-regular f."""
    return Kernel(kind="symmetric", label=f"s[{f.label}]", f=f)


def asymmetric_kernel(f: MonotoneFunction) -> Kernel:
    """g(x, y) = f(0) (x - y)^2 / (2 m_f(x, y)), the antisymmetric-side
    kernel.  Identically zero for non-regular f."""
    return Kernel(kind="asymmetric", label=f"as[{f.label}]", f=f)


def inverse_mean_kernel(f: MonotoneFunction) -> Kernel:
    """g(x, y) = 1 / m_f(x, y), the monotone-metric kernel itself."""
    return Kernel(kind="inverse_mean", label=f"inv[{f.label}]", f=f)


def difference_kernel(g1: Kernel, g2: Kernel) -> Kernel:
    """g1 - g2, valid only where g1 dominates g2.

    Evaluation raises DominanceViolationError, with the witness point, at
    any sampled (x, y) where g1(x, y) < g2(x, y) beyond relative roundoff
    slack; smaller negative residues are clamped to zero.
    """
    return Kernel(
        kind="difference", label=f"({g1.label})-({g2.label})", parts=(g1, g2)
    )


def custom_kernel(fn: Callable, label: str = "custom") -> Kernel:
    """Wrap an arbitrary vectorized g(x, y).  The caller vouches for it."""
    return Kernel(kind="custom", label=label, fn=fn)


def parse_kernel(text: str) -> Kernel:
    """Parse a kernel name: cl | s:<f> | as:<f> | inv:<f>.

    <f> is a serialized monotone function name as in parse_function.
    """
    name = text.strip().lower()
    if name == "cl":
        return classical_kernel()
    for prefix, factory in (
        ("s:", symmetric_kernel),
        ("as:", asymmetric_kernel),
        ("inv:", inverse_mean_kernel),
    ):
        if name.startswith(prefix):
            return factory(parse_function(name[len(prefix):]))
    raise ValueError(
        f"unknown kernel {text!r}; expected cl, s:<f>, as:<f> or inv:<f>"
    )
