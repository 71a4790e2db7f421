"""Evaluable radial profiles with their domain and singular points."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class RadialFunction:
    """A radial profile r -> R(r).

    ``func`` is vectorised over numpy float arrays.  ``mp_func``, when present,
    evaluates a single mpmath number at the working precision; the
    finite-difference oracle uses it to keep rounding noise out of second
    differences.
    """

    func: Callable
    domain: tuple
    L: int
    kappa: float
    singular_points: tuple = ()
    mp_func: Optional[Callable] = field(default=None, compare=False)
    label: str = ""

    def _check(self, r):
        lo, hi = self.domain
        span = hi - lo if np.isfinite(hi) else 1.0
        slack = 1e-12 * max(span, 1.0)
        ra = np.asarray(r, dtype=float)
        if np.any(ra < lo - slack) or np.any(ra > hi + slack):
            raise DomainError(f"r outside [{lo}, {hi}] for {self.label or 'profile'}")

    def __call__(self, r):
        self._check(r)
        out = self.func(np.asarray(r, dtype=float))
        return float(out) if np.ndim(r) == 0 else np.asarray(out, dtype=float)

    def mp(self, r):
        if self.mp_func is None:
            raise NotImplementedError(f"{self.label or 'profile'} has no high-precision evaluator")
        self._check(float(r))
        return self.mp_func(r)
