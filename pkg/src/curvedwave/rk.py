"""Adaptive Dormand-Prince 5(4) integrator on plain scalar lists.

Works with any number type supporting + - * / and abs (float, mpmath.mpf),
so the same stepper serves the double-precision shooting code and the
extended-precision residual checks.  Steps are clipped to land exactly on
each requested output point.
"""
from __future__ import annotations

from fractions import Fraction as F


class IntegrationError(ArithmeticError):
    pass


_C = [0, F(1, 5), F(3, 10), F(4, 5), F(8, 9), 1, 1]
_A = [
    [],
    [F(1, 5)],
    [F(3, 40), F(9, 40)],
    [F(44, 45), F(-56, 15), F(32, 9)],
    [F(19372, 6561), F(-25360, 2187), F(64448, 6561), F(-212, 729)],
    [F(9017, 3168), F(-355, 33), F(46732, 5247), F(49, 176), F(-5103, 18656)],
    [F(35, 384), 0, F(500, 1113), F(125, 192), F(-2187, 6784), F(11, 84)],
]
_B5 = [F(35, 384), 0, F(500, 1113), F(125, 192), F(-2187, 6784), F(11, 84), 0]
_B4 = [F(5179, 57600), 0, F(7571, 16695), F(393, 640), F(-92097, 339200), F(187, 2100), F(1, 40)]
_E = [b5 - b4 for b5, b4 in zip(_B5, _B4)]


def _default_number(q):
    return float(q)


def integrate(rhs, x0, y0, stops, rtol=1e-10, atol=1e-14, h0=None, number=_default_number,
              max_steps=200_000):
    """Integrate y' = rhs(x, y) from x0 and return the state at every point in ``stops``.

    ``stops`` must be monotone in the direction of integration.  ``number``
    converts the exact tableau coefficients into the working number type.
    """
    c = [number(v) for v in _C]
    # nonzero tableau entries only, as (stage, coefficient) pairs
    rows = [[(m, number(v)) for m, v in enumerate(row) if v != 0] for row in _A]
    err_row = [(m, number(v)) for m, v in enumerate(_E) if v != 0]
    dim = len(y0)

    stops = list(stops)
    if not stops:
        return []
    direction = 1 if stops[-1] >= x0 else -1
    span = abs(float(stops[-1]) - float(x0)) or 1.0
    h = abs(h0) if h0 else 1e-3 * span
    x = x0
    y = list(y0)
    out = []
    k1 = rhs(x, y)
    steps = 0
    for target in stops:
        while (float(target) - float(x)) * direction > 0:
            steps += 1
            if steps > max_steps:
                raise IntegrationError(f"step budget exhausted at x={float(x)!r}")
            remaining = abs(float(target) - float(x))
            last = h >= remaining
            step = (target - x) if last else direction * number(h)
            ks = [k1]
            for i in range(1, 7):
                yi = []
                for j in range(dim):
                    acc = 0
                    for m, coef in rows[i]:
                        acc = acc + coef * ks[m][j]
                    yi.append(y[j] + step * acc)
                ks.append(rhs(x + c[i] * step, yi))
            y_new = yi  # the seventh stage is evaluated at the 5th-order solution (FSAL)
            err = 0.0
            for j in range(dim):
                acc = 0
                for m, coef in err_row:
                    acc = acc + coef * ks[m][j]
                scale = atol + rtol * max(abs(float(y[j])), abs(float(y_new[j])))
                local = abs(float(step * acc))
                if local:
                    err = max(err, local / scale if scale else float("inf"))
            if err <= 1.0:
                x = target if last else x + step
                y = y_new
                k1 = ks[6]
            elif abs(float(step)) < 1e-300:
                raise IntegrationError(f"step size underflow at x={float(x)!r}")
            factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            if err <= 1.0 and last:
                # keep the controller's proposal, not the clipped step
                h = max(h, abs(float(step)) * factor)
            else:
                h = abs(float(step)) * factor
        out.append(list(y))
    return out
