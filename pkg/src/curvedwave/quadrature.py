"""Quadrature on the sphere with the invariant radial measure.

Production integrals are done in the geodesic radius r, where the weight
``sin_k(r)^2`` is smooth, using composite 32-point Gauss-Legendre panels with
dyadic refinement.  The s-variable form, singular at the equator, is only
used for a cross-check and goes through a tanh-sinh rule.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .kappa_trig import antipode, as_kappa, sin_k
from .radial_polynomials import (
    TYPE_I,
    RadialPolynomial,
    eval_q,
    radial_profile,
    s_polynomial,
)

PANEL_ORDER = 32
ABS_FLOOR = 1e-15
MAX_DEPTH = 30

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(PANEL_ORDER)


class ToleranceError(ArithmeticError):
    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error~{error!r})")
        self.estimate = estimate
        self.error = error


def _panel(fn, a, b):
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _GL_NODES
    return half * float(np.dot(_GL_WEIGHTS, fn(x)))


def gauss_legendre(fn: Callable, a: float, b: float, panels: int = 1) -> float:
    """Composite fixed-order rule on ``panels`` equal panels."""
    edges = np.linspace(a, b, panels + 1)
    return sum(_panel(fn, lo, hi) for lo, hi in zip(edges[:-1], edges[1:]))


def integrate(fn: Callable, a: float, b: float, rel_tol: float = 1e-12, abs_tol: float = ABS_FLOOR) -> float:
    """Adaptive Gauss-Legendre integration with dyadic panel splitting.

    ``fn`` must accept a numpy array.  A panel is accepted once it agrees
    with the sum over its two halves; the tolerance is relative to a
    four-panel estimate of the whole integral.
    """
    scale = abs(gauss_legendre(fn, a, b, 4))
    tol = max(rel_tol * scale, abs_tol)
    total = 0.0
    stack = [(a, b, _panel(fn, a, b), 0)]
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = _panel(fn, lo, mid), _panel(fn, mid, hi)
        err = abs(whole - (left + right))
        width_share = (hi - lo) / (b - a)
        if err <= tol * width_share or err <= abs_tol:
            total += left + right
        elif depth >= MAX_DEPTH:
            raise ToleranceError("adaptive quadrature did not reach tolerance", total, err)
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    return total


def integrate_radial(fn: Callable, kappa, rel_tol: float = 1e-12) -> float:
    """Integral of fn(r) sin_k(r)^2 over the whole sphere radius [0, pi/sqrt(kappa)]."""
    k = as_kappa(kappa)
    end = antipode(k)
    return integrate(lambda r: fn(r) * sin_k(k, r) ** 2, 0.0, end, rel_tol)


def tanh_sinh(fn: Callable, a: float, b: float, rel_tol: float = 1e-13, max_level: int = 12) -> float:
    """Tanh-sinh quadrature; integrable endpoint singularities are allowed.

    ``fn(x, dist_a, dist_b)`` receives each node together with its distances
    to both endpoints, computed without cancellation.
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)

    def nodes(h, offset, count):
        t = offset + h * np.arange(count)
        u = 0.5 * math.pi * np.sinh(t)
        with np.errstate(over="ignore"):
            w = 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
            # 1 - tanh(u) = 2 / (1 + e^{2u}), stable for large u
            to_b = half * 2.0 / (1.0 + np.exp(2.0 * u))
            to_a = half * 2.0 / (1.0 + np.exp(-2.0 * u))
        keep = (w > 1e-300) & (to_b > 0) & (to_a > 0)
        x = mid + half * np.tanh(u)
        return x[keep], to_a[keep], to_b[keep], w[keep]

    t_max = 6.5
    h = 0.5
    estimate = None
    for _ in range(max_level):
        count = int(round(t_max / h))
        x, da, db, w = nodes(h, -count * h, 2 * count + 1)
        new = h * half * float(np.dot(w, fn(x, da, db)))
        if estimate is not None and (abs(new - estimate) <= rel_tol * abs(new) or abs(new - estimate) <= ABS_FLOOR):
            return new
        estimate = new
        h *= 0.5
    raise ToleranceError("tanh-sinh did not converge", estimate, abs(new - estimate))


@dataclass(frozen=True)
class SturmLiouvilleForm:
    """Self-adjoint form (p f')' + lambda q f = 0 of the type I (f) or type II (g) equation.

    p = s^{2(L+1)} (1 - kappa s^2)^beta and q = s^{2(L+1)} (1 - kappa s^2)^(beta - 1),
    with beta = 1/2 for f and 3/2 for g.
    """

    family: str
    L: int
    kappa: float

    @property
    def beta(self) -> float:
        return 0.5 if self.family == "f" else 1.5

    def lambda_shift(self, energy_sq: float) -> float:
        if self.family == "f":
            return energy_sq - self.kappa * self.L * (self.L + 2)
        return energy_sq - self.kappa * (self.L + 1) * (self.L + 3)

    def p(self, s):
        return s ** (2 * self.L + 2) * (1.0 - self.kappa * s * s) ** self.beta

    def dp(self, s):
        w = 1.0 - self.kappa * s * s
        return s ** (2 * self.L + 1) * w ** (self.beta - 1.0) * (
            (2 * self.L + 2) * w - 2.0 * self.beta * self.kappa * s * s)

    def q_weight(self, s):
        return s ** (2 * self.L + 2) * (1.0 - self.kappa * s * s) ** (self.beta - 1.0)


def _horner(coeffs, x):
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = acc * x + float(c)
    return acc


def sl_residual(family: str, L: int, kappa, energy_sq, poly_in_s: RadialPolynomial,
                points: int = 201) -> float:
    """Relative residual of the Sturm-Liouville equation for an exact polynomial solution."""
    k = as_kappa(kappa)
    form = SturmLiouvilleForm(family, L, k)
    lam = form.lambda_shift(float(energy_sq))
    s = np.linspace(0.0, 1.0 / math.sqrt(k), points + 2)[1:-1]
    f = _horner(poly_in_s.coeffs, s)
    df = _horner(poly_in_s.derivative_coeffs(1), s)
    d2f = _horner(poly_in_s.derivative_coeffs(2), s)
    lhs = form.dp(s) * df + form.p(s) * d2f
    rhs = lam * form.q_weight(s) * f
    scale = float(np.max(np.abs(rhs)))
    resid = float(np.max(np.abs(lhs + rhs)))
    return resid if scale == 0.0 else resid / scale


def _gram_on_panels(funcs, k, panels):
    end = antipode(k)
    edges = np.linspace(0.0, end, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    r = (0.5 * (edges[1:] + edges[:-1])[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel() * sin_k(k, r) ** 2
    vals = np.array([f(r) for f in funcs])
    return (vals * w) @ vals.T


def orthogonality_matrix(L: int, levels, kappa, rel_tol: float = 1e-14) -> np.ndarray:
    """Gram matrix of the profiles sin_k^L Q_{n,L}(cos_k) under sin_k^2 dr.

    The whole matrix shares one composite rule whose panel count doubles
    until every entry is stable relative to the largest diagonal entry.
    """
    k = as_kappa(kappa)
    funcs = [radial_profile(n, L, k).func for n in levels]
    panels = 2
    gram = _gram_on_panels(funcs, k, panels)
    for _ in range(12):
        panels *= 2
        finer = _gram_on_panels(funcs, k, panels)
        change = float(np.max(np.abs(finer - gram)))
        gram = finer
        if change <= rel_tol * float(np.max(np.abs(np.diag(gram)))):
            return gram
    raise ToleranceError("Gram matrix did not stabilise", gram, change)


def normalized_defects(gram: np.ndarray) -> np.ndarray:
    d = np.sqrt(np.abs(np.diag(gram)))
    return np.abs(gram) / np.outer(d, d)


def orthogonality_csv(L: int, levels, gram: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["L", "n_i", "n_j", "gram_value", "normalized_defect"])
    defects = normalized_defects(gram)
    for i, ni in enumerate(levels):
        for j, nj in enumerate(levels):
            writer.writerow([L, ni, nj, repr(float(gram[i, j])), repr(float(defects[i, j]))])
    return buf.getvalue()


def half_sphere_r_integral(n1: int, n2: int, L: int, kappa) -> float:
    """Overlap of two profiles over the upper hemisphere, in the r variable."""
    k = as_kappa(kappa)
    f1 = radial_profile(n1, L, k).func
    f2 = radial_profile(n2, L, k).func
    return integrate(lambda r: f1(r) * f2(r) * sin_k(k, r) ** 2, 0.0, 0.5 * antipode(k), 1e-14)


def half_sphere_s_integral(n1: int, n2: int, L: int, kappa) -> float:
    """Same overlap built from the s-polynomials P_f / P_g, integrated in s.

    The weight s^2 / sqrt(1 - kappa s^2) is singular at s = 1/sqrt(kappa).
    """
    k = as_kappa(kappa)
    rk = math.sqrt(k)
    k_exact = Fraction(k)
    polys = [s_polynomial(n, L, k_exact) for n in (n1, n2)]

    def integrand(s, _to_a, to_b):
        # 1 - kappa s^2 = sqrt(kappa) (1/sqrt(kappa) - s) (1 + sqrt(kappa) s)
        w = rk * to_b * (1.0 + rk * s)
        out = s ** (2 * L + 2) / np.sqrt(w)
        for poly in polys:
            factor = eval_q(poly, s)
            if poly.family != TYPE_I:
                factor = factor * np.sqrt(w)
            out = out * factor
        return out

    return tanh_sinh(integrand, 0.0, 1.0 / rk)
