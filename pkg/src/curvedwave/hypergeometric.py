"""Gauss hypergeometric series 2F1 with termination detection.

Only direct forward summation is provided.  A series is evaluated either
because it terminates (then any ``t`` is allowed) or because ``|t| < 1``.
Complex-conjugate parameter pairs ``b = conj(a)`` are summed in real
arithmetic, so their partial sums carry no imaginary part at all.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

INTEGER_TOL = 1e-9
REL_TOL = 1e-15
MAX_TERMS = 10**6


class ConvergenceError(ArithmeticError):
    pass


class DomainError(ValueError):
    pass


def _is_nonpositive_integer(x: float, tol: float = INTEGER_TOL) -> bool:
    return x < tol and abs(x - round(x)) < tol


@dataclass(frozen=True)
class HypergeometricParams:
    a: complex
    b: complex
    c: float
    conjugate_pair: bool = False

    def __post_init__(self):
        if _is_nonpositive_integer(float(self.c)):
            raise ValueError(f"c must not be zero or a negative integer, got {self.c}")
        a, b = complex(self.a), complex(self.b)
        if self.conjugate_pair:
            if b != a.conjugate():
                raise ValueError("conjugate_pair requires b == conj(a)")
        elif a.imag != 0.0 or b.imag != 0.0:
            raise ValueError("complex parameters are only supported as a conjugate pair")

    @classmethod
    def conjugate(cls, real_part: float, imag_part: float, c: float) -> "HypergeometricParams":
        a = complex(real_part, imag_part)
        return cls(a, a.conjugate(), c, conjugate_pair=True)

    @property
    def is_real(self) -> bool:
        return not self.conjugate_pair


def pochhammer(x, n: int):
    """Rising factorial x (x+1) ... (x+n-1); the empty product is 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = 1
    for j in range(n):
        out *= x + j
    return out


def termination_degree(params: HypergeometricParams) -> Optional[int]:
    """Degree at which the series stops, or None for an infinite series."""
    if params.conjugate_pair and complex(params.a).imag != 0.0:
        return None
    candidates = []
    for p in (params.a, params.b):
        x = complex(p).real
        if _is_nonpositive_integer(x):
            candidates.append(int(round(-x)))
    return min(candidates) if candidates else None


def _ratio_numerator(params: HypergeometricParams, n: int) -> float:
    """(a+n)(b+n) evaluated as a real number."""
    if params.conjugate_pair:
        a = complex(params.a)
        re = a.real + n
        return re * re + a.imag * a.imag
    return (complex(params.a).real + n) * (complex(params.b).real + n)


def series_coefficients(params: HypergeometricParams, count: int) -> list[float]:
    """First ``count`` coefficients (a)_n (b)_n / ((c)_n n!) as real floats."""
    coeffs = []
    term = 1.0
    c = float(params.c)
    for n in range(count):
        coeffs.append(term)
        term = term * _ratio_numerator(params, n) / ((c + n) * (n + 1))
    return coeffs


def _summed(params, t, rel_tol, max_terms):
    t = float(t)
    degree = termination_degree(params)
    if degree is None and abs(t) >= 1.0:
        raise DomainError(f"non-terminating series requires |t| < 1, got t={t}")
    c = float(params.c)
    # past this index the term ratio is eventually monotone, so a small term is final
    tail_start = abs(complex(params.a)) + abs(complex(params.b)) + abs(c)
    total = 1.0
    magnitude = 1.0
    term = 1.0
    small_run = 0
    for n in range(max_terms):
        if degree is not None and n >= degree:
            return total, magnitude
        term = term * _ratio_numerator(params, n) * t / ((c + n) * (n + 1))
        total += term
        magnitude += abs(term)
        if abs(term) <= rel_tol * abs(total):
            small_run += 1
            if small_run >= 2 and n > tail_start:
                return total, magnitude
        else:
            small_run = 0
    raise ConvergenceError(f"2F1 series did not converge in {max_terms} terms (t={t})")


def gauss_2f1(params: HypergeometricParams, t: float, *, rel_tol: float = REL_TOL,
              max_terms: int = MAX_TERMS) -> float:
    """Sum 2F1(a, b; c; t) term by term."""
    return _summed(params, t, rel_tol, max_terms)[0]


def gauss_2f1_conditioned(params: HypergeometricParams, t: float, *, rel_tol: float = REL_TOL,
                          max_terms: int = MAX_TERMS) -> tuple[float, float]:
    """The series value together with sum |term| / |value|.

    The second number bounds the rounding amplification of the summation:
    about log10 of it digits are lost to cancellation (alternating series
    with large terms, as for t near -1 and large parameters).
    """
    total, magnitude = _summed(params, t, rel_tol, max_terms)
    return total, (magnitude / abs(total) if total else math.inf)


def gauss_2f1_derivative(params: HypergeometricParams, t: float) -> float:
    """d/dt 2F1(a,b;c;t) = (ab/c) 2F1(a+1,b+1;c+1;t)."""
    c = float(params.c)
    if params.conjugate_pair:
        a = complex(params.a)
        shifted = HypergeometricParams.conjugate(a.real + 1.0, a.imag, c + 1.0)
        ab = abs(a) ** 2
    else:
        a, b = complex(params.a).real, complex(params.b).real
        shifted = HypergeometricParams(a + 1.0, b + 1.0, c + 1.0)
        ab = a * b
    if ab == 0.0:
        return 0.0
    return ab / c * gauss_2f1(shifted, t)

