"""Monte Carlo wealth paths under fixed-fraction betting rebalanced every n periods."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .growth import CostModel, feasible_k_max
from .pmf import ReturnPmf


@dataclass(frozen=True)
class SimConfig:
    k: float
    n: int = 1
    horizon: int = 10_000
    trials: int = 200
    seed: int = 0
    costs: CostModel = field(default_factory=CostModel)
    v0: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.horizon < 1 or self.horizon % self.n:
            raise ValueError(f"horizon ({self.horizon}) must be a positive multiple of n ({self.n})")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.v0 > 0:
            raise ValueError(f"v0 must be positive, got {self.v0}")
        k_max = feasible_k_max(self.costs)
        if not 0.0 <= self.k <= k_max:
            raise ValueError(f"k must lie in [0, {k_max!r}], got {self.k!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SimResult:
    mean_log_growth: float
    std_error: float
    ruin_count: int
    trials: int

    def to_dict(self) -> dict:
        return {
            "mean_log_growth": self.mean_log_growth,
            "std_error": self.std_error,
            "ruin_count": self.ruin_count,
            "trials": self.trials,
        }


def trial_generators(seed: int, trials: int) -> list[np.random.Generator]:
    """One independent PCG64 stream per trial, split from ``seed`` by trial index."""
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(trials)]


def simulate(dist: ReturnPmf, cfg: SimConfig, trajectory_path=None) -> SimResult:
    """Run ``cfg.trials`` independent wealth paths and average the per-period log growth.

    Every ``n`` periods the bettor stakes ``k`` of current wealth; the stake
    rides for ``n`` draws, idle cash earns ``r`` and the update pays the
    cost, so each block multiplies wealth by ``(1+r)^n (1 + k X~)``.  Ruined
    paths (wealth <= 0) are counted and left out of the average.

    With ``trajectory_path`` set, wealth at every block boundary is written as
    ``trial,step,v`` CSV.
    """
    blocks = cfg.horizon // cfg.n
    cdf = np.cumsum(dist.p)
    cdf[-1] = 1.0
    factors = np.ascontiguousarray(1.0 + dist.x)
    disc = (1.0 + cfg.costs.r) ** -cfg.n
    block_interest = cfg.n * math.log1p(cfg.costs.r)
    eps = cfg.costs.epsilon

    growth = np.empty(cfg.trials)
    ruined = np.zeros(cfg.trials, dtype=bool)
    fh = open(trajectory_path, "w", newline="\n") if trajectory_path is not None else None
    try:
        if fh:
            fh.write("trial,step,v\n")
        for t, rng in enumerate(trial_generators(cfg.seed, cfg.trials)):
            if cfg.k == 0.0:
                logs = np.zeros(blocks)
            else:
                u = rng.random((blocks, cfg.n))
                logs = _kernels.block_logs(u, cdf, factors, float(cfg.k), disc, eps)
            logs = logs + block_interest
            if np.isneginf(logs).any():
                ruined[t] = True
                growth[t] = -np.inf
            else:
                growth[t] = math.fsum(logs) / cfg.horizon
            if fh:
                v = cfg.v0 * np.exp(np.concatenate(([0.0], np.cumsum(logs))))
                for b, vb in enumerate(v):
                    fh.write(f"{t},{b * cfg.n},{format(float(vb), '.17g')}\n")
    finally:
        if fh:
            fh.close()

    ok = growth[~ruined]
    if ok.size == 0:
        return SimResult(-math.inf, math.nan, int(ruined.sum()), cfg.trials)
    mean = math.fsum(ok) / ok.size
    se = float(np.std(ok, ddof=1) / math.sqrt(ok.size)) if ok.size > 1 else 0.0
    return SimResult(mean, se, int(ruined.sum()), cfg.trials)
