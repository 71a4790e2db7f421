"""Radial waves on hyperbolic space (kappa < 0).

The regular solution is R(rho) = rho^L 2F1(a, b; L + 3/2; -|kt| rho^2) with
kt = kappa / E^2.  The series only converges for |t| < 1, so beyond the
handoff at |t| = 0.8 the profile is continued by marching the rho-form of
the radial equation

    rho^2 (1 + |kt| rho^2) R'' + rho (2 + 3 |kt| rho^2) R' + (rho^2 - L(L+1)) R = 0

from series initial data.  No normalisation beyond f(0) = 1 is imposed.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .hypergeometric import HypergeometricParams, gauss_2f1_conditioned, gauss_2f1_derivative
from .kappa_trig import as_kappa, sin_k
from .radial_function import RadialFunction
from .rk import IntegrationError, integrate

HANDOFF_T = 0.8
CONTINUATION_RTOL = 1e-13
MP_RTOL = 1e-10
# a float sum losing more digits than this is redone in mpmath
MAX_LOST_DIGITS = 3


class ContinuationError(ArithmeticError):
    pass


def hyperbolic_params(L: int, kappa_tilde_abs: float) -> HypergeometricParams:
    """a, b = ((L+1) +- B)/2 with B^2 = 1 - 1/|kt|; complex conjugate when |kt| < 1."""
    if kappa_tilde_abs <= 0:
        raise ValueError("|kappa_tilde| must be positive")
    c = L + 1.5
    if kappa_tilde_abs >= 1.0:
        big_b = math.sqrt(kappa_tilde_abs**2 - kappa_tilde_abs) / kappa_tilde_abs
        lo, hi = sorted((0.5 * ((L + 1) - big_b), 0.5 * ((L + 1) + big_b)))
        return HypergeometricParams(lo, hi, c)
    imag = 0.5 * math.sqrt(1.0 / kappa_tilde_abs - 1.0)
    return HypergeometricParams.conjugate(0.5 * (L + 1), imag, c)


@dataclass(frozen=True)
class HyperbolicRadialSpec:
    L: int
    kappa: float
    energy_sq: float

    def __post_init__(self):
        if as_kappa(self.kappa) >= 0:
            raise ValueError("hyperbolic waves need kappa < 0")
        if self.energy_sq <= 0:
            raise ValueError("energy_sq must be positive")
        if self.L < 0:
            raise ValueError("L must be non-negative")

    @classmethod
    def from_kappa_tilde(cls, L: int, kappa_tilde_abs: float, energy_sq: float = 1.0):
        return cls(L, -kappa_tilde_abs * energy_sq, energy_sq)

    @property
    def kappa_tilde_abs(self) -> float:
        return abs(float(self.kappa)) / self.energy_sq

    @property
    def params(self) -> HypergeometricParams:
        return hyperbolic_params(self.L, self.kappa_tilde_abs)

    @property
    def convergence_radius(self) -> float:
        """Radius of the series in rho, 1/sqrt(|kt|)."""
        return 1.0 / math.sqrt(self.kappa_tilde_abs)

    def rho_at(self, t_abs: float) -> float:
        return math.sqrt(t_abs / self.kappa_tilde_abs)


def _series_float(spec, rho, with_derivative):
    with mpmath.workdps(20):
        out = _series_mp(spec, mpmath.mpf(rho), with_derivative)
    return tuple(float(v) for v in out) if with_derivative else float(out)


def series_value(spec: HyperbolicRadialSpec, rho: float) -> float:
    """rho^L f(t) by direct summation, switching to mpmath when the float sum cancels badly."""
    t = -spec.kappa_tilde_abs * rho * rho
    f, cond = gauss_2f1_conditioned(spec.params, t)
    if cond > 10.0**MAX_LOST_DIGITS:
        return _series_float(spec, rho, False)
    return rho**spec.L * f


def series_state(spec: HyperbolicRadialSpec, rho: float) -> tuple:
    """(R, dR/drho) from the series."""
    kt = spec.kappa_tilde_abs
    L = spec.L
    t = -kt * rho * rho
    f, cond = gauss_2f1_conditioned(spec.params, t)
    if cond > 10.0**MAX_LOST_DIGITS:
        return _series_float(spec, rho, True)
    df = gauss_2f1_derivative(spec.params, t) * (-2.0 * kt * rho)
    lead = rho**L
    dlead = L * rho ** (L - 1) if L else 0.0
    return lead * f, dlead * f + lead * df


def _rhs(L, kt):
    cent = L * (L + 1)

    def rhs(rho, y):
        r2 = rho * rho
        return [y[1], -(rho * (2 + 3 * kt * r2) * y[1] + (r2 - cent) * y[0]) / (r2 * (1 + kt * r2))]

    return rhs


def _fixed(x, bits):
    return int(mpmath.nint(mpmath.ldexp(x, bits)))


def _series_sums(spec, t, dps):
    """f, df/dt and sum |term| at ``t`` in fixed-point integer arithmetic.

    Every quantity is an integer scaled by 2^bits, so the absolute error is
    a few units of 2^-bits per term, whatever the cancellation.
    """
    bits = int(dps * 3.33) + 16
    one = 1 << bits
    params = spec.params
    a = complex(params.a)
    big_c = _fixed(mpmath.mpf(spec.L) + mpmath.mpf(3) / 2, bits)
    if params.conjugate_pair:
        re = _fixed(mpmath.mpf(a.real), bits)
        im_sq = _fixed(mpmath.mpf(a.imag) ** 2, bits)

        def num(n):
            shifted = re + n * one
            return (shifted * shifted >> bits) + im_sq
    else:
        ar, br = _fixed(mpmath.mpf(a.real), bits), _fixed(mpmath.mpf(complex(params.b).real), bits)

        def num(n):
            return (ar + n * one) * (br + n * one) >> bits
    big_t = _fixed(t, bits)
    term = one
    total = one
    magnitude = one
    weighted = 0  # sum of n * term_n
    n = 0
    while True:
        # term_{n+1} = term_n (a+n)(b+n) t / ((c+n)(n+1))
        den = (big_c + n * one) * (n + 1)
        term = term * num(n) * big_t // (den << bits)
        n += 1
        total += term
        magnitude += abs(term)
        weighted += n * term
        if abs(term) <= 1:
            break
    scale = mpmath.mpf(2) ** -bits
    first = num(0) * one // big_c  # df/dt at t = 0
    dtotal = (mpmath.mpf(weighted) / t) * scale if big_t else mpmath.mpf(first) * scale
    return mpmath.mpf(total) * scale, dtotal, mpmath.mpf(magnitude) * scale


def _series_mp(spec: HyperbolicRadialSpec, rho, with_derivative=False):
    """Series at the working precision, with guard digits for the cancellation it incurs."""
    kt = mpmath.mpf(spec.kappa_tilde_abs)
    t = -kt * rho * rho
    dps = mpmath.mp.dps + 10
    total, dtotal, magnitude = _series_sums(spec, t, dps)
    lost = int(mpmath.log10(magnitude / abs(total))) if total else dps
    if lost > 5:
        total, dtotal, magnitude = _series_sums(spec, t, dps + lost)
    L = spec.L
    value = rho**L * total
    if not with_derivative:
        return value
    dvalue = (L * rho ** (L - 1) if L else 0) * total + rho**L * dtotal * (-2 * kt * rho)
    return value, dvalue


class _Continuation:
    """Marches the rho-equation outward from the handoff, remembering its last state."""

    def __init__(self, spec: HyperbolicRadialSpec, start_t: float = HANDOFF_T, precise: bool = False):
        self.spec = spec
        self.precise = precise
        self.rhs = _rhs(spec.L, mpmath.mpf(spec.kappa_tilde_abs) if precise else spec.kappa_tilde_abs)
        rho0 = spec.rho_at(start_t)
        if precise:
            rho0 = mpmath.sqrt(mpmath.mpf(start_t) / mpmath.mpf(spec.kappa_tilde_abs))
            state = _series_mp(spec, rho0, with_derivative=True)
        else:
            state = series_state(spec, rho0)
        self.origin = (rho0, list(state))
        self.reset()

    def reset(self):
        self.rho, self.y = self.origin[0], list(self.origin[1])

    def values(self, rhos):
        """R at each rho; ``rhos`` must be increasing and past the handoff."""
        out = []
        if len(rhos) and rhos[0] < self.rho:
            self.reset()
        kw = dict(rtol=MP_RTOL if self.precise else CONTINUATION_RTOL, atol=0.0)
        if self.precise:
            kw["number"] = lambda q: mpmath.mpf(q.numerator) / q.denominator if hasattr(q, "numerator") else mpmath.mpf(q)
        try:
            states = integrate(self.rhs, self.rho, self.y, list(rhos), **kw)
        except IntegrationError as exc:
            raise ContinuationError(str(exc)) from exc
        for state in states:
            out.append(state[0])
        if len(rhos):
            self.rho, self.y = rhos[-1], states[-1]
        return out


def hyperbolic_radial(spec: HyperbolicRadialSpec, rho):
    """R(rho) = rho^L f(t): series for |t| <= 0.8, ODE continuation beyond."""
    ra = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(ra < 0):
        raise ValueError("rho must be non-negative")
    out = np.empty_like(ra)
    handoff = spec.rho_at(HANDOFF_T)
    inner = ra <= handoff
    for i in np.flatnonzero(inner):
        out[i] = series_value(spec, ra[i])
    outer = np.flatnonzero(~inner)
    if outer.size:
        order = outer[np.argsort(ra[outer])]
        out[order] = _Continuation(spec).values([float(v) for v in ra[order]])
    return float(out[0]) if np.ndim(rho) == 0 else out


def overlap_agreement(spec: HyperbolicRadialSpec, start_t: float = 0.5, band=(0.6, 0.8), points: int = 41) -> float:
    """Max difference between series and ODE continuation across the band, relative to max |R| there."""
    rhos = np.linspace(spec.rho_at(band[0]), spec.rho_at(band[1]), points)
    marched = np.array(_Continuation(spec, start_t=start_t).values(list(rhos)))
    summed = np.array([series_value(spec, r) for r in rhos])
    return float(np.max(np.abs(marched - summed)) / np.max(np.abs(summed)))


def hyperbolic_profile(spec: HyperbolicRadialSpec, r_max: float) -> RadialFunction:
    """The same solution as a function of the geodesic radius, rho = E sin_k(kappa, r)."""
    k = float(spec.kappa)
    scale = math.sqrt(spec.energy_sq)
    handoff = spec.rho_at(HANDOFF_T)
    marcher = {}

    def func(r):
        return hyperbolic_radial(spec, scale * sin_k(k, r))

    def mp_func(r):
        rk = mpmath.sqrt(-mpmath.mpf(k))
        rho = mpmath.sqrt(mpmath.mpf(spec.energy_sq)) * mpmath.sinh(rk * r) / rk
        if rho <= handoff:
            return _series_mp(spec, rho)
        if "m" not in marcher:
            marcher["m"] = _Continuation(spec, precise=True)
        return marcher["m"].values([rho])[0]

    return RadialFunction(func, (0.0, r_max), spec.L, k, (0.0,), mp_func, f"hyperbolic L={spec.L}")


def profile_csv(spec: HyperbolicRadialSpec, rhos) -> str:
    values = hyperbolic_radial(spec, np.asarray(rhos, dtype=float))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rho", "value"])
    for rho, v in zip(rhos, values):
        writer.writerow([repr(float(rho)), repr(float(v))])
    return buf.getvalue()
