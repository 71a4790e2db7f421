"""Curvature-dependent trigonometric functions.

``cos_k`` and ``sin_k`` interpolate between the circular functions (kappa > 0),
the flat limits ``1`` and ``x`` (kappa = 0) and the hyperbolic functions
(kappa < 0).  All functions accept scalars or numpy arrays for ``x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# below this value of |kappa| x^2 the truncated Taylor series is exact to double precision
SERIES_THRESHOLD = 1e-8
POLE_TOL = 1e-12


@dataclass(frozen=True)
class Curvature:
    kappa: float

    def __post_init__(self):
        if not math.isfinite(self.kappa):
            raise ValueError(f"curvature must be finite, got {self.kappa!r}")

    @property
    def classification(self) -> str:
        if self.kappa > 0:
            return "spherical"
        if self.kappa < 0:
            return "hyperbolic"
        return "flat"

    def __float__(self):
        return float(self.kappa)


def as_kappa(kappa) -> float:
    """Return the plain float behind a ``Curvature`` or a number."""
    value = float(kappa.kappa if isinstance(kappa, Curvature) else kappa)
    if not math.isfinite(value):
        raise ValueError(f"curvature must be finite, got {value!r}")
    return value


def _scalar_or_array(result, x):
    if np.ndim(x) == 0:
        return float(result)
    return result


def cos_k(kappa, x):
    k = as_kappa(kappa)
    xa = np.asarray(x, dtype=float)
    u = k * xa * xa
    series = 1.0 - u / 2.0 + u * u / 24.0
    if k > 0:
        exact = np.cos(math.sqrt(k) * xa)
    elif k < 0:
        exact = np.cosh(math.sqrt(-k) * xa)
    else:
        exact = np.ones_like(xa)
    out = np.where(np.abs(u) < SERIES_THRESHOLD, series, exact)
    return _scalar_or_array(out, x)


def sin_k(kappa, x):
    k = as_kappa(kappa)
    xa = np.asarray(x, dtype=float)
    u = k * xa * xa
    series = xa * (1.0 - u / 6.0 + u * u / 120.0)
    if k > 0:
        rk = math.sqrt(k)
        exact = np.sin(rk * xa) / rk
    elif k < 0:
        rk = math.sqrt(-k)
        exact = np.sinh(rk * xa) / rk
    else:
        exact = xa.copy()
    out = np.where(np.abs(u) < SERIES_THRESHOLD, series, exact)
    return _scalar_or_array(out, x)


class PoleError(ZeroDivisionError):
    """Raised when ``tan_k`` is asked for a value where ``cos_k`` vanishes."""


def tan_k(kappa, x):
    c = np.asarray(cos_k(kappa, x))
    if np.any(np.abs(c) < POLE_TOL):
        raise PoleError(f"cos_k vanishes at x={x!r} for kappa={as_kappa(kappa)!r}")
    return _scalar_or_array(np.asarray(sin_k(kappa, x)) / c, x)


def antipode(kappa) -> float:
    """Geodesic distance from a pole to its antipode, pi/sqrt(kappa)."""
    k = as_kappa(kappa)
    if k <= 0:
        raise ValueError("antipode exists only for positive curvature")
    return math.pi / math.sqrt(k)
