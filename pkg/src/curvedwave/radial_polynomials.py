"""Radial polynomial families of the free particle on the sphere.

Two series in ``s = sin_k(kappa, r)`` solve the radial equation on the upper
hemisphere:

* type I:  ``R = s^L P_f(s)``
* type II: ``R = s^L sqrt(1 - kappa s^2) P_g(s)``

Both terminate on the discrete spectrum.  Rewriting them in
``xi = cos_k(kappa, r)`` (``kappa s^2 = 1 - xi^2``) gives the unified family
``Q_{n,L}(xi)`` whose coefficients no longer depend on kappa.  Every
coefficient is kept as an exact ``Fraction``; floats appear only when a
polynomial is evaluated.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .kappa_trig import antipode, as_kappa, cos_k, sin_k
from .radial_function import DomainError, RadialFunction

UNIFIED_Q = "unified_Q"
TYPE_I = "type_I_in_s"
TYPE_II = "type_II_in_s"
FAMILIES = (UNIFIED_Q, TYPE_I, TYPE_II)

# float Horner is used while sum|c_j| stays below this; beyond it rounding
# in the alternating sum would exceed ~1e-12 and evaluation switches to exact
HORNER_CONDITION_LIMIT = 1e4


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(float(x))


@dataclass(frozen=True)
class RadialPolynomial:
    n: int
    L: int
    coeffs: tuple
    family: str = UNIFIED_Q

    def __post_init__(self):
        coeffs = tuple(_rational(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if len(coeffs) != self.degree + 1 or coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero and match the degree")
        if any(c != 0 for j, c in enumerate(coeffs) if (j - self.degree) % 2):
            raise ValueError("coefficients violate the parity of the polynomial")
        if self.family == UNIFIED_Q and sum(coeffs) != 1:
            raise ValueError("unified Q must equal 1 at xi = 1")

    @property
    def degree(self) -> int:
        if self.family == UNIFIED_Q:
            return self.n
        # s-polynomials have degree 2 n_r
        return 2 * (self.n // 2)

    @property
    def condition(self) -> float:
        """Sum of |c_j|, a bound on cancellation in monomial-basis evaluation on [-1, 1]."""
        return float(sum(abs(c) for c in self.coeffs))

    def __call__(self, x):
        return eval_q(self, x)

    def derivative_coeffs(self, order: int = 1) -> list:
        c = list(self.coeffs)
        for _ in range(order):
            c = [j * c[j] for j in range(1, len(c))] or [Fraction(0)]
        return c

    def exact(self, x) -> Fraction:
        x = _rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "L": self.L,
            "family": self.family,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data) -> "RadialPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = tuple(Fraction(int(p), int(q)) for p, q in data["coeffs"])
        return cls(int(data["n"]), int(data["L"]), coeffs, data.get("family", UNIFIED_Q))


def _even_series(L, kappa, energy_sq, max_terms, shift):
    kappa = _rational(kappa)
    energy_sq = _rational(energy_sq)
    coeffs = [Fraction(1)]
    for m in range(max_terms - 1):
        top = kappa * (L + 2 * m + shift) * (L + 2 * m + 2 + shift) - energy_sq
        if top == 0:
            break
        coeffs.append(coeffs[-1] * top / ((2 * m + 2) * (2 * L + 2 * m + 3)))
    return coeffs


def type1_coefficients(L: int, kappa, energy_sq, max_terms: int) -> list:
    """Coefficients of 1, s^2, s^4, ... of the type I series with f_0 = 1.

    The list stops early when the series terminates, which happens exactly
    for ``energy_sq = kappa (2 n_r + L)(2 n_r + L + 2)``.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be at least 1")
    return _even_series(L, kappa, energy_sq, max_terms, 0)


def type2_coefficients(L: int, kappa, energy_sq, max_terms: int) -> list:
    """Coefficients of 1, s^2, s^4, ... of the type II factor g (f = sqrt(1 - kappa s^2) g)."""
    if max_terms < 1:
        raise ValueError("max_terms must be at least 1")
    return _even_series(L, kappa, energy_sq, max_terms, 1)


def s_polynomial(n: int, L: int, kappa) -> RadialPolynomial:
    """P_f (n even) or P_g (n odd) as a polynomial in s at the level energy."""
    kappa = _rational(kappa)
    n_r, odd = divmod(n, 2)
    big_n = n + L
    series = type2_coefficients if odd else type1_coefficients
    even = series(L, kappa, kappa * big_n * (big_n + 2), n_r + 2)
    if len(even) != n_r + 1:
        raise ArithmeticError(f"series for n={n}, L={L} did not terminate at degree {2 * n_r}")
    coeffs = []
    for c in even:
        coeffs.extend([c, Fraction(0)])
    return RadialPolynomial(n, L, tuple(coeffs[:-1]), TYPE_II if odd else TYPE_I)


@lru_cache(maxsize=None)
def unified_q(n: int, L: int) -> RadialPolynomial:
    """Q_{n,L}(xi) with exact rational coefficients, normalised to Q(1) = 1."""
    if n < 0 or L < 0:
        raise ValueError("n and L must be non-negative")
    n_r, odd = divmod(n, 2)
    big_n = n + L
    series = type2_coefficients if odd else type1_coefficients
    # with kappa = 1 the coefficient of s^{2m} multiplies u^m, u = kappa s^2 = 1 - xi^2
    in_u = series(L, 1, big_n * (big_n + 2), n_r + 2)
    assert len(in_u) == n_r + 1
    coeffs = [Fraction(0)] * (2 * n_r + 1)
    for m, cm in enumerate(in_u):
        for j in range(m + 1):
            coeffs[2 * j] += cm * math.comb(m, j) * (-1) ** j
    if odd:
        coeffs = [Fraction(0)] + coeffs
    norm = sum(coeffs)
    coeffs = [c / norm for c in coeffs]
    return RadialPolynomial(n, L, tuple(coeffs), UNIFIED_Q)


@lru_cache(maxsize=256)
def _integer_form(coeffs: tuple):
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return tuple(int(c * den) for c in coeffs), den


def _exact_horner(coeffs: tuple, x: float) -> float:
    nums, den = _integer_form(coeffs)
    p, q = float(x).as_integer_ratio()
    deg = len(nums) - 1
    acc = nums[-1]
    qpow = 1
    for j in range(deg - 1, -1, -1):
        qpow *= q
        acc = acc * p + nums[j] * qpow
    return acc / (den * qpow)


def eval_q(poly: RadialPolynomial, xi):
    """Evaluate a radial polynomial at xi (scalar or array)."""
    xa = np.asarray(xi, dtype=float)
    if poly.condition <= HORNER_CONDITION_LIMIT:
        acc = np.zeros_like(xa)
        for c in reversed(poly.coeffs):
            acc = acc * xa + float(c)
    else:
        flat = [_exact_horner(poly.coeffs, v) for v in xa.ravel()]
        acc = np.array(flat, dtype=float).reshape(xa.shape)
    return float(acc) if np.ndim(xi) == 0 else acc


def eval_q_mp(poly: RadialPolynomial, xi):
    """Horner evaluation in mpmath at the current working precision."""
    import mpmath

    acc = mpmath.mpf(0)
    for c in reversed(poly.coeffs):
        acc = acc * xi + mpmath.mpf(c.numerator) / c.denominator
    return acc


def radial_profile(n: int, L: int, kappa) -> RadialFunction:
    """r -> sin_k(r)^L Q_{n,L}(cos_k(r)) on the whole sphere [0, pi/sqrt(kappa)]."""
    k = as_kappa(kappa)
    if k <= 0:
        raise DomainError("radial_profile needs positive curvature")
    poly = unified_q(n, L)

    def func(r):
        return sin_k(k, r) ** L * eval_q(poly, cos_k(k, r))

    def mp_func(r):
        import mpmath

        rk = mpmath.sqrt(mpmath.mpf(k))
        return (mpmath.sin(rk * r) / rk) ** L * eval_q_mp(poly, mpmath.cos(rk * r))

    end = antipode(k)
    return RadialFunction(func, (0.0, end), L, k, (0.0, end), mp_func, f"Q_{n},{L}")


def gegenbauer_reference(n: int, alpha: float, xi):
    """C_n^alpha(xi) by the standard three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(xi, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return float(prev) if np.ndim(xi) == 0 else prev
    cur = 2.0 * alpha * x
    for m in range(2, n + 1):
        prev, cur = cur, (2.0 * x * (m + alpha - 1) * cur - (m + 2 * alpha - 2) * prev) / m
    return float(cur) if np.ndim(xi) == 0 else cur


def real_roots(poly: RadialPolynomial, grid_points: int = 100_001, tol: float = 1e-13) -> list:
    """Roots in [-1, 1] located by sign changes on a uniform grid and refined by bisection."""
    xs = np.linspace(-1.0, 1.0, grid_points)
    vals = eval_q(poly, xs)
    roots = []
    for i in range(grid_points - 1):
        a, b = xs[i], xs[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(float(a))
            continue
        if fa * fb > 0:
            continue
        if fb == 0.0:
            continue  # picked up as fa == 0 on the next interval
        while b - a > tol:
            mid = 0.5 * (a + b)
            fm = poly(mid)
            if fm == 0.0:
                a = b = mid
                break
            if (fm > 0) == (fa > 0):
                a, fa = mid, fm
            else:
                b = mid
        roots.append(0.5 * (a + b))
    if vals[-1] == 0.0:
        roots.append(1.0)
    return roots


def sign_changes(values: Sequence[float]) -> int:
    """Number of sign changes in a sampled sequence, skipping exact zeros."""
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)
