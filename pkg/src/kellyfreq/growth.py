"""Expected log growth with costs and interest, and its maximisation over K."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .pmf import TotalReturnPmf

K_TOL = 1e-12


@dataclass(frozen=True)
class CostModel:
    """Proportional transaction cost ``epsilon`` per bet update and per-period interest ``r``."""

    epsilon: float = 0.0
    r: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon!r}")
        if not self.r >= 0.0:
            raise ValueError(f"r must be non-negative, got {self.r!r}")


NO_COSTS = CostModel()


class Boundary(str, enum.Enum):
    INTERIOR = "interior"
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class OptResult:
    n: int
    k_star: float
    g_star: float
    k_max: float
    boundary: Boundary
    evaluations: int = 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k_star": self.k_star,
            "g_star": self.g_star,
            "k_max": self.k_max,
            "boundary": self.boundary.value,
            "evaluations": self.evaluations,
        }


def feasible_k_max(costs: CostModel = NO_COSTS) -> float:
    """Largest fraction that cannot drive wealth negative: ``1 / (1 + epsilon)``."""
    return 1.0 / (1.0 + costs.epsilon)


def modified_atoms(total: TotalReturnPmf, costs: CostModel = NO_COSTS) -> np.ndarray:
    if costs.epsilon == 0.0 and costs.r == 0.0:
        return total.x
    disc = (1.0 + costs.r) ** -total.n
    return (1.0 + total.x) * disc - costs.epsilon - 1.0


def modified_total_return(total: TotalReturnPmf, costs: CostModel = NO_COSTS) -> TotalReturnPmf:
    """Fold interest and costs into the returns: ``(1+x)/(1+r)^n - eps - 1``.

    The result may carry atoms below -1 (a cost on top of a total loss); it is
    returned as a plain container, feasibility is enforced through ``k_max``.
    """
    return TotalReturnPmf(total.n, modified_atoms(total, costs), total.p, total.merged, total.label)


def _value(xt, p, n, k, costs):
    s = _kernels.log_growth_sum(xt, p, float(k))
    return math.log1p(costs.r) + s / n


def _slope(xt, p, n, k):
    return _kernels.slope_sum(xt, p, float(k)) / n


def growth_value(total: TotalReturnPmf, k: float, costs: CostModel = NO_COSTS) -> float:
    """Per-period expected log growth when staking ``k`` once every ``total.n`` periods.

    Returns ``-inf`` when some atom would take wealth to zero or below.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    return _value(modified_atoms(total, costs), total.p, total.n, k, costs)


def growth_slope(total: TotalReturnPmf, k: float, costs: CostModel = NO_COSTS) -> float:
    """Analytic derivative of :func:`growth_value` in ``k`` (``-inf`` past the pole)."""
    return _slope(modified_atoms(total, costs), total.p, total.n, k)


def optimize_growth(total: TotalReturnPmf, costs: CostModel = NO_COSTS) -> OptResult:
    """Maximise :func:`growth_value` over ``[0, k_max]`` by bisection on the slope.

    The objective is concave, so the sign of the slope brackets the maximiser.
    If the worst modified atom makes ``1 + K x`` vanish at or before ``k_max``
    the upper end is open and never returned.
    """
    if total is None or len(total) == 0 or not np.all(np.isfinite(total.x)):
        raise ValueError("invalid distribution")
    xt = np.ascontiguousarray(modified_atoms(total, costs))
    p = total.p
    n = total.n
    k_max = feasible_k_max(costs)
    evals = 1
    if _slope(xt, p, n, 0.0) <= 0.0:
        return OptResult(n, 0.0, _value(xt, p, n, 0.0, costs), k_max, Boundary.LOWER, evals)

    x_lo = float(xt.min())
    pole = -1.0 / x_lo if x_lo < 0.0 else math.inf
    hi = k_max
    if pole > k_max:
        evals += 1
        if _slope(xt, p, n, k_max) >= 0.0:
            return OptResult(n, k_max, _value(xt, p, n, k_max, costs), k_max, Boundary.UPPER, evals)
    else:
        hi = pole
    lo = 0.0
    while hi - lo > K_TOL:
        mid = 0.5 * (lo + hi)
        evals += 1
        if _slope(xt, p, n, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return OptResult(n, lo, _value(xt, p, n, lo, costs), k_max, Boundary.INTERIOR, evals)


def bernoulli_closed_form(p: float, n: int) -> OptResult:
    """Exact optimum for the even-money coin flip (win +1 w.p. ``p``) rebalanced every ``n`` steps."""
    if not 0.5 < p <= 1.0:
        raise ValueError(f"p must lie in (1/2, 1], got {p!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if p == 1.0:
        return OptResult(n, 1.0, math.log(2.0), 1.0, Boundary.UPPER)
    pn = p**n
    two_n = 2.0**n
    k = (two_n * pn - 1.0) / (two_n - 1.0)
    g = pn * math.log(p) + (1.0 - pn) / n * math.log((1.0 - pn) / (two_n - 1.0)) + math.log(2.0)
    return OptResult(n, k, g, 1.0, Boundary.INTERIOR)


def cost_threshold(n: int, epsilon: float) -> float:
    """Win probability at or below which the cost makes not betting optimal."""
    return ((1.0 + epsilon) / 2.0**n) ** (1.0 / n)


def bernoulli_cost_closed_form(p: float, n: int, epsilon: float) -> OptResult:
    """Exact optimum of the even-money coin flip under proportional cost ``epsilon``.

    ``g_star`` is per period, i.e. the expectation of the log over one
    rebalancing block divided by ``n``.
    """
    if not 0.5 < p <= 1.0:
        raise ValueError(f"p must lie in (1/2, 1], got {p!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    k_max = 1.0 / (1.0 + epsilon)
    if p <= cost_threshold(n, epsilon):
        return OptResult(n, 0.0, 0.0, k_max, Boundary.LOWER)
    pn = p**n
    two_n = 2.0**n
    k = (two_n * pn - epsilon - 1.0) / ((epsilon + 1.0) * (two_n - epsilon - 1.0))
    win = pn * math.log(two_n * pn / (epsilon + 1.0))
    lose = 0.0 if pn == 1.0 else (1.0 - pn) * math.log(two_n * (1.0 - pn) / (two_n - epsilon - 1.0))
    boundary = Boundary.UPPER if pn == 1.0 else Boundary.INTERIOR
    return OptResult(n, k, (win + lose) / n, k_max, boundary)
