"""Numerical checks that do not rely on the closed-form solutions.

``radial_operator_residual`` applies the geodesic-polar radial operator to a
profile with central finite differences.  ``shoot_eigenvalues`` rediscovers
the sphere spectrum by integrating the radial ODE from both poles and
matching at the equator.
"""
from __future__ import annotations

import math

import mpmath
import numpy as np
from scipy.optimize import brentq

from .kappa_trig import antipode, as_kappa
from .radial_function import RadialFunction
from .rk import IntegrationError, integrate

__all__ = [
    "RadialFunction",
    "IntegrationError",
    "NoEigenvalueError",
    "radial_operator_residual",
    "default_grid",
    "equator_mismatch",
    "shoot_eigenvalues",
]

FD_STEP = 1e-5
MP_DPS = 40
POLE_CLEARANCE = 1e-3
SHOOT_RTOL = 1e-10


class NoEigenvalueError(LookupError):
    pass


def _mp_trig(kappa, r):
    k = mpmath.mpf(kappa)
    if kappa > 0:
        rk = mpmath.sqrt(k)
        return mpmath.sin(rk * r) / rk, mpmath.cos(rk * r)
    if kappa < 0:
        rk = mpmath.sqrt(-k)
        return mpmath.sinh(rk * r) / rk, mpmath.cosh(rk * r)
    return r, mpmath.mpf(1)


def default_grid(fn: RadialFunction, points: int = 101, r_max: float | None = None) -> np.ndarray:
    lo, hi = fn.domain
    if r_max is not None:
        hi = r_max
    if not math.isfinite(hi):
        raise ValueError("an explicit r_max is needed on an unbounded domain")
    return np.linspace(lo + POLE_CLEARANCE, hi - POLE_CLEARANCE, points)


def radial_operator_residual(fn: RadialFunction, energy_sq: float, grid, h: float = FD_STEP,
                             extended: bool = True) -> float:
    """max |(1/S^2)(S^2 R')' - L(L+1) R / S^2 + E^2 R| / max |E^2 R| over ``grid``.

    Derivatives are second-order central differences with step ``h``.  When
    the profile offers a high-precision evaluator and ``extended`` is set,
    the stencil is evaluated at 40 digits so rounding does not swamp the
    O(h^2) truncation error.
    """
    L = fn.L
    cent = L * (L + 1)
    use_mp = extended and fn.mp_func is not None
    resid = 0.0
    scale = 0.0
    plain = 0.0
    with mpmath.workdps(MP_DPS):
        for r in np.asarray(grid, dtype=float):
            if use_mp:
                rr, hh = mpmath.mpf(r), mpmath.mpf(h)
                lo, mid, hi = fn.mp(rr - hh), fn.mp(rr), fn.mp(rr + hh)
                s, c = _mp_trig(fn.kappa, rr)
                e2 = mpmath.mpf(energy_sq)
            else:
                lo, mid, hi = fn(np.array([r - h, r, r + h]))
                s, c = _mp_trig(fn.kappa, r)
                s, c, e2, hh = float(s), float(c), float(energy_sq), h
            d1 = (hi - lo) / (2 * hh)
            d2 = (hi - 2 * mid + lo) / (hh * hh)
            value = d2 + 2 * c / s * d1 - cent * mid / (s * s) + e2 * mid
            resid = max(resid, abs(float(value)))
            scale = max(scale, abs(float(e2 * mid)))
            plain = max(plain, abs(float(mid)))
    if scale == 0.0:
        return resid / plain if plain else resid
    return resid / scale


def _launch(L, kappa, energy_sq, eps):
    """Regular start u = 1 + c2 r^2 for u = R / sin_k^L, at distance eps from a pole.

    c2 is the first coefficient of the type I recursion, the indicial
    expansion of the radial equation.
    """
    c2 = (kappa * L * (L + 2) - energy_sq) / (2.0 * (2 * L + 3))
    return 1.0 + c2 * eps * eps, 2.0 * c2 * eps


def _reduced_rhs(L, kappa, energy_sq):
    # R = sin_k^L u turns the radial equation into
    # u'' + 2 (L + 1) (C/S) u' + (E^2 - kappa L (L + 2)) u = 0,
    # which keeps u smooth at the poles where R ~ r^L would force tiny steps
    rk = math.sqrt(kappa)
    drift = 2.0 * (L + 1)
    shift = energy_sq - kappa * L * (L + 2)

    def rhs(r, y):
        return [y[1], -drift * rk / math.tan(rk * r) * y[1] - shift * y[0]]

    return rhs


def equator_mismatch(L: int, kappa, energy_sq: float, rtol: float = SHOOT_RTOL) -> float:
    """Normalised Wronskian at the equator of the solutions regular at each pole."""
    k = as_kappa(kappa)
    end = antipode(k)
    eps = 1e-6 * end
    mid = 0.5 * end
    rhs = _reduced_rhs(L, k, energy_sq)
    v, d = _launch(L, k, energy_sq, eps)
    (ua, da), = integrate(rhs, eps, [v, d], [mid], rtol=rtol, atol=0.0, h0=eps)
    # the equation is symmetric under r -> end - r; the slope flips sign
    (ub, db), = integrate(rhs, end - eps, [v, -d], [mid], rtol=rtol, atol=0.0, h0=eps)
    # sin_k^L is common to both solutions, so the sign of the R-Wronskian is that of the u-Wronskian
    w = ua * db - da * ub
    return w / math.sqrt((ua * ua + da * da) * (ub * ub + db * db))


def shoot_eigenvalues(L: int, kappa, energy_sq_window, count: int = 50, scan_step: float | None = None,
                      rtol: float = SHOOT_RTOL) -> list[float]:
    """Eigenvalues E^2 inside ``energy_sq_window`` found by shooting from both poles."""
    k = as_kappa(kappa)
    if k <= 0:
        raise ValueError("shooting needs a positive curvature")
    lo, hi = energy_sq_window
    if not lo < hi:
        raise ValueError("energy window must be increasing")
    # consecutive eigenvalues for fixed L are at least 3 kappa apart
    step = scan_step if scan_step is not None else 0.5 * k
    grid = np.linspace(lo, hi, max(2, int(math.ceil((hi - lo) / step)) + 1))
    values = [equator_mismatch(L, k, e, rtol) for e in grid]
    found = []
    for e0, e1, w0, w1 in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if w0 == 0.0:
            found.append(float(e0))
        elif w0 * w1 < 0:
            found.append(brentq(lambda e: equator_mismatch(L, k, e, rtol), e0, e1, xtol=1e-13 * e1, rtol=1e-13))
        if len(found) >= count:
            break
    if not found:
        raise NoEigenvalueError(f"no eigenvalue for L={L} in {energy_sq_window}")
    return found
