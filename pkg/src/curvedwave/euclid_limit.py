"""Spherical Bessel functions and the flat-space contraction of sphere profiles.

Holding ``kappa (n + L)(n + L + 2) = k^2`` fixed while n grows, the upper
hemisphere profile ``sin_k^L Q_{n,L}(cos_k)`` tends to ``j_L(k r)`` up to the
factor fixed by matching the r^L terms at the pole.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .kappa_trig import cos_k, sin_k
from .radial_function import RadialFunction
from .radial_polynomials import eval_q, eval_q_mp, unified_q

SMALL_X = 1e-3
DEFAULT_N_CAP = 40
GRID_POINTS = 2000


class InvalidSpecError(ValueError):
    pass


def double_factorial_odd(L: int) -> int:
    """(2L+1)!! = 1 * 3 * 5 * ... * (2L+1)."""
    out = 1
    for j in range(3, 2 * L + 2, 2):
        out *= j
    return out


def _series(L, x):
    x2 = x * x
    a = 2 * L + 3
    return x**L / double_factorial_odd(L) * (1.0 - x2 / (2 * a) + x2 * x2 / (8 * a * (a + 2)))


def _upward(L, x):
    j0 = np.sin(x) / x
    if L == 0:
        return j0
    j1 = np.sin(x) / (x * x) - np.cos(x) / x
    for l in range(1, L):
        j0, j1 = j1, (2 * l + 1) / x * j1 - j0
    return j1


def _miller(L, x):
    """Downward recurrence from far above L, normalised by sum (2l+1) j_l^2 = 1."""
    start = L + 30 + int(np.max(x))
    above = np.zeros_like(x)
    cur = np.full_like(x, 1e-30)
    values = [cur]
    for l in range(start, 0, -1):
        above, cur = cur, (2 * l + 1) / x * cur - above
        values.append(cur)
        big = np.abs(cur) > 1e100
        if np.any(big):
            f = np.where(big, 1e-100, 1.0)
            values = [v * f for v in values]
            above, cur = above * f, cur * f
    values.reverse()  # values[l] now holds the unnormalised j_l
    norm = sum((2 * l + 1) * v * v for l, v in enumerate(values))
    sign = np.where(values[0] * np.sin(x) < 0, -1.0, 1.0)
    return sign * values[L] / np.sqrt(norm)


def spherical_bessel_j(L: int, x):
    """j_L(x) for x >= 0.

    Upward recurrence from j_0, j_1 where x >= L; Miller's downward
    recurrence where x < L; a three-term series for x < 1e-3.
    """
    if L < 0:
        raise ValueError("L must be non-negative")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa < 0):
        raise ValueError("spherical_bessel_j needs x >= 0")
    out = np.empty_like(xa)
    small = xa < SMALL_X
    up = ~small & (xa >= L)
    down = ~small & ~up
    out[small] = _series(L, xa[small])
    if np.any(up):
        out[up] = _upward(L, xa[up])
    if np.any(down):
        out[down] = _miller(L, xa[down])
    return float(out[0]) if np.ndim(x) == 0 else out


def limit_curvature(n: int, L: int, k: float) -> float:
    """kappa_n with kappa_n (n + L)(n + L + 2) = k^2."""
    big_n = n + L
    if big_n == 0:
        return math.inf
    return k * k / (big_n * (big_n + 2))


def hemisphere(kappa: float) -> float:
    return 0.5 * math.pi / math.sqrt(kappa) if math.isfinite(kappa) else 0.0


def contracted_profile(n: int, L: int, k: float) -> RadialFunction:
    """(k^L / (2L+1)!!) sin_k^L Q_{n,L}(cos_k) at kappa_n, on the upper hemisphere."""
    if n < 0 or L < 0:
        raise ValueError("n and L must be non-negative")
    if k <= 0:
        raise ValueError("k must be positive")
    kappa = limit_curvature(n, L, k)
    if not math.isfinite(kappa):
        # n = L = 0: E^2 = 0 for every curvature, the profile is the constant 1
        return RadialFunction(lambda r: np.ones_like(r), (0.0, math.inf), 0, 0.0, label="Q_0,0")
    poly = unified_q(n, L)
    pref = k**L / double_factorial_odd(L)

    def func(r):
        return pref * sin_k(kappa, r) ** L * eval_q(poly, cos_k(kappa, r))

    def mp_func(r):
        import mpmath

        rk = mpmath.sqrt(mpmath.mpf(kappa))
        return pref * (mpmath.sin(rk * r) / rk) ** L * eval_q_mp(poly, mpmath.cos(rk * r))

    return RadialFunction(func, (0.0, hemisphere(kappa)), L, kappa, (0.0,), mp_func, f"Q_{n},{L}")


def leading_coefficient(fn: RadialFunction, r: float = 1e-4) -> float:
    """lim_{r->0} R(r)/r^L, Richardson-extrapolated from samples at r and 2r."""
    g1 = fn(r) / r**fn.L
    g2 = fn(2 * r) / (2 * r) ** fn.L
    return (4.0 * g1 - g2) / 3.0


@dataclass(frozen=True)
class LimitSequenceSpec:
    L: int
    k: float
    n_values: tuple
    r_max: float
    allow_large_n: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if self.k <= 0 or self.r_max <= 0:
            raise InvalidSpecError("k and r_max must be positive")
        if not self.n_values:
            raise InvalidSpecError("at least one n is required")
        for n in self.n_values:
            if n < 0:
                raise InvalidSpecError(f"n must be non-negative, got {n}")
            if n > DEFAULT_N_CAP and not self.allow_large_n:
                raise InvalidSpecError(f"n={n} exceeds the default cap {DEFAULT_N_CAP}; pass allow_large_n")
            kappa = limit_curvature(n, self.L, self.k)
            if not math.isfinite(kappa):
                raise InvalidSpecError("n + L = 0 has no finite limit curvature")
            if self.r_max >= hemisphere(kappa):
                raise InvalidSpecError(
                    f"r_max={self.r_max} reaches past the hemisphere {hemisphere(kappa):.6g} of n={n}")

    @property
    def common_hemisphere(self) -> float:
        return min(hemisphere(limit_curvature(n, self.L, self.k)) for n in self.n_values)


@dataclass
class ConvergenceReport:
    spec: LimitSequenceSpec
    r: np.ndarray
    reference: np.ndarray
    curves: dict = field(default_factory=dict)
    distances: dict = field(default_factory=dict)

    @property
    def rows(self) -> list:
        return [(n, self.distances[n]) for n in self.spec.n_values]

    @property
    def decreasing(self) -> bool:
        d = [self.distances[n] for n in self.spec.n_values]
        return all(b < a for a, b in zip(d, d[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["L", "k", "n", "kappa_n", "sup_distance"])
        for n in self.spec.n_values:
            kappa = limit_curvature(n, self.spec.L, self.spec.k)
            writer.writerow([self.spec.L, repr(float(self.spec.k)), n, repr(kappa), repr(self.distances[n])])
        return buf.getvalue()


def convergence_report(spec: LimitSequenceSpec, points: int = GRID_POINTS) -> ConvergenceReport:
    """Sup-norm distance of each member to j_L(k r) on a uniform grid over [0, r_max]."""
    r = np.linspace(0.0, spec.r_max, points)
    reference = spherical_bessel_j(spec.L, spec.k * r)
    report = ConvergenceReport(spec, r, reference)
    for n in spec.n_values:
        values = contracted_profile(n, spec.L, spec.k)(r)
        report.curves[n] = values
        report.distances[n] = float(np.max(np.abs(values - reference)))
    return report
