"""Kelly fractions and log growth as a function of betting frequency."""

from ._kernels import BACKEND
from .attractiveness import (
    AttractReport,
    b_min,
    b_min_bisection,
    b_min_lambert,
    bernoulli_threshold,
    lambert_w_m1,
    theta,
    uniform_theta,
)
from .experiments import (
    SweepRow,
    conjecture1_scan,
    conjecture2_scan,
    figure2_table,
    figure3_table,
    figure4_table,
    figure5_table,
    frequency_sweep,
)
from .growth import (
    Boundary,
    CostModel,
    OptResult,
    bernoulli_closed_form,
    bernoulli_cost_closed_form,
    cost_threshold,
    feasible_k_max,
    growth_slope,
    growth_value,
    modified_total_return,
    optimize_growth,
)
from .pmf import ReturnPmf, TotalReturnPmf, bernoulli_pmf, iter_total_returns, total_return_pmf, uniform_pmf
from .simulate import SimConfig, SimResult, simulate

__version__ = "0.1.0"

__all__ = [
    "AttractReport",
    "b_min",
    "b_min_bisection",
    "b_min_lambert",
    "BACKEND",
    "bernoulli_closed_form",
    "bernoulli_cost_closed_form",
    "bernoulli_pmf",
    "bernoulli_threshold",
    "Boundary",
    "conjecture1_scan",
    "conjecture2_scan",
    "cost_threshold",
    "CostModel",
    "feasible_k_max",
    "figure2_table",
    "figure3_table",
    "figure4_table",
    "figure5_table",
    "frequency_sweep",
    "growth_slope",
    "growth_value",
    "iter_total_returns",
    "lambert_w_m1",
    "modified_total_return",
    "optimize_growth",
    "OptResult",
    "ReturnPmf",
    "SimConfig",
    "SimResult",
    "simulate",
    "SweepRow",
    "theta",
    "total_return_pmf",
    "TotalReturnPmf",
    "uniform_pmf",
    "uniform_theta",
]
