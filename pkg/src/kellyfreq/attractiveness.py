"""Sufficient-attractiveness test ``E[1/(1+X)] <= 1`` and its closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pmf import ReturnPmf

THETA_SLACK = 1e-14
BMIN_AGREE = 1e-9
_INV_E = math.exp(-1.0)


@dataclass(frozen=True)
class AttractReport:
    theta: float
    satisfied: bool
    jensen_bound: float | None
    ex: float

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "satisfied": self.satisfied,
            "jensen_bound": self.jensen_bound,
            "ex": self.ex,
        }


def theta(dist: ReturnPmf) -> AttractReport:
    """Evaluate ``theta = E[1/(1+X)]`` and the Jensen bound ``E[X] >= 1/theta - 1``.

    An atom at -1 makes theta infinite and the inequality unsatisfied.
    """
    if dist.x[0] <= -1.0:
        th = math.inf
    else:
        th = float(np.dot(dist.p, 1.0 / (1.0 + dist.x)))
    satisfied = th <= 1.0 + THETA_SLACK
    bound = 1.0 / th - 1.0 if 0.0 < th <= 1.0 + THETA_SLACK else None
    return AttractReport(th, satisfied, bound, dist.mean)


def _check_support(x_min, x_max, lo_closed):
    ok_lo = -1.0 <= x_min if lo_closed else -1.0 < x_min
    if not (ok_lo and x_min < 0.0 < x_max and math.isfinite(x_max)):
        raise ValueError(f"support ({x_min!r}, {x_max!r}) must straddle zero within (-1, inf)")


def bernoulli_threshold(x_min: float, x_max: float) -> float:
    """Smallest ``P(X = x_max)`` making a two-point return sufficiently attractive."""
    _check_support(x_min, x_max, lo_closed=True)
    return abs(x_min) * (1.0 + x_max) / (x_max - x_min)


def uniform_theta(a: float, b: float) -> float:
    """``E[1/(1+X)]`` for ``X`` uniform on ``[a, b]``."""
    _check_support(a, b, lo_closed=False)
    return (math.log1p(b) - math.log1p(a)) / (b - a)


def lambert_w_m1(x: float) -> float:
    """Lower real branch ``W_{-1}`` of the Lambert function on ``[-1/e, 0)``.

    Halley iteration from ``log(-x) - log(-log(-x))``; within 1e-3 of the
    branch point the start comes from the square-root series instead, since
    Halley's step degenerates there.
    """
    if not (-_INV_E - 1e-16 <= x < 0.0):
        raise ValueError(f"W_-1 is defined on [-1/e, 0), got {x!r}")
    q = 1.0 + math.e * x
    if q <= 1e-300:
        return -1.0
    if q < 1e-3:
        s = -math.sqrt(2.0 * q)
        w = -1.0 + s - s * s / 3.0 + 11.0 / 72.0 * s**3
    else:
        l1 = math.log(-x)
        w = l1 - math.log(-l1)
    for _ in range(64):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if f == 0.0 or wp1 == 0.0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_new = w - step
        if w_new > -1.0:
            w_new = 0.5 * (w - 1.0)
        if abs(w_new - w) <= 4e-16 * abs(w):
            w = w_new
            break
        w = w_new
    return w


def _f_gap(t, c):
    # log f(t) - log f(a) with f(t) = e^t / (1+t); c = log f(a)
    return t - math.log1p(t) - c


def b_min_bisection(a: float, tol: float = 1e-12) -> float:
    if not -1.0 < a < 0.0:
        raise ValueError(f"a must lie in (-1, 0), got {a!r}")
    c = a - math.log1p(a)
    lo, hi = 0.0, 1.0
    while _f_gap(hi, c) < 0.0:
        lo, hi = hi, 2.0 * hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _f_gap(mid, c) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def b_min_lambert(a: float) -> float:
    if not -1.0 < a < 0.0:
        raise ValueError(f"a must lie in (-1, 0), got {a!r}")
    u = 1.0 + a
    return -1.0 - lambert_w_m1(-u * math.exp(-u))


def b_min(a: float) -> float:
    """Smallest upper support ``b`` making uniform ``[a, b]`` returns sufficiently attractive.

    Solved twice, by bisection on ``e^b/(1+b) = e^a/(1+a)`` and through
    ``W_{-1}``; disagreement beyond 1e-9 raises ``ArithmeticError``.
    """
    via_bisect = b_min_bisection(a)
    via_w = b_min_lambert(a)
    if abs(via_bisect - via_w) > BMIN_AGREE:
        raise ArithmeticError(f"b_min({a!r}): bisection {via_bisect!r} vs Lambert {via_w!r}")
    return via_bisect
