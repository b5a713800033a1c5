"""Frequency sweeps, conjecture scans and the figure tables, as CSV-ready rows."""

from __future__ import annotations

import io
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .attractiveness import b_min, b_min_bisection, b_min_lambert, theta
from .growth import NO_COSTS, CostModel, bernoulli_cost_closed_form, optimize_growth
from .pmf import DEFAULT_CAP, ReturnPmf, bernoulli_pmf, iter_total_returns

CONJ1_TOL = 1e-10
FLAT_TOL = 1e-9


@dataclass(frozen=True)
class SweepRow:
    n: int
    k_star: float
    g_star: float
    e_star: float
    theta: float
    merged: bool
    k_max: float = field(default=1.0, compare=False, repr=False)


SWEEP_COLUMNS = ("n", "k_star", "g_star", "e_star", "theta", "merged")


def frequency_sweep(
    dist: ReturnPmf, n_max: int, costs: CostModel = NO_COSTS, cap: int = DEFAULT_CAP
) -> list[SweepRow]:
    """Optimal fraction and growth for each rebalancing period ``n = 1..n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    th = theta(dist).theta
    rows = []
    g1 = None
    for total in iter_total_returns(dist, n_max, cap):
        res = optimize_growth(total, costs)
        if g1 is None:
            g1 = res.g_star
        rows.append(SweepRow(total.n, res.k_star, res.g_star, g1 - res.g_star, th, total.merged, res.k_max))
    return rows


@dataclass(frozen=True)
class Conjecture1Report:
    n_max: int
    tol: float
    holds: bool
    violation: tuple[int, float, float] | None
    g_star: list[float]

    def to_dict(self) -> dict:
        return asdict(self)


def conjecture1_scan(
    dist: ReturnPmf, n_max: int, tol: float = CONJ1_TOL, cap: int = DEFAULT_CAP, rows=None
) -> Conjecture1Report:
    """Check ``g_n* >= g_{n+1}* - tol`` along a sweep; report the first violation."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rows = rows if rows is not None else frequency_sweep(dist, n_max, cap=cap)
    g = [r.g_star for r in rows]
    violation = None
    for i in range(len(g) - 1):
        if g[i] < g[i + 1] - tol:
            violation = (rows[i].n, g[i], g[i + 1])
            break
    return Conjecture1Report(n_max, tol, violation is None, violation, g)


@dataclass(frozen=True)
class Conjecture2Report:
    n_max: int
    eq_tol: float
    theta: float
    satisfied: bool
    flat: bool
    max_gap: float
    # (not satisfied, flat) would be a counterexample to necessity
    consistent: bool

    def to_dict(self) -> dict:
        return asdict(self)


def conjecture2_scan(
    dist: ReturnPmf, n_max: int, eq_tol: float = FLAT_TOL, cap: int = DEFAULT_CAP, rows=None
) -> Conjecture2Report:
    """Tabulate (theta <= 1, g_n* flat in n) for one distribution."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rep = theta(dist)
    rows = rows if rows is not None else frequency_sweep(dist, n_max, cap=cap)
    gap = max(abs(r.e_star) for r in rows)
    flat = gap <= eq_tol
    return Conjecture2Report(n_max, eq_tol, rep.theta, rep.satisfied, flat, gap, rep.satisfied or not flat)


def figure2_table(p_list: Sequence[float], n_max: int = 10) -> list[dict]:
    """Optimal growth against ``n`` for even-money coin flips."""
    out = []
    for p in p_list:
        for row in frequency_sweep(bernoulli_pmf(p, 1.0), n_max):
            out.append({"p": p, "n": row.n, "k_star": row.k_star, "g_star": row.g_star})
    return out


def figure3_table(p_list: Sequence[float], n_max: int = 10, epsilon: float = 0.1) -> list[dict]:
    """Per-period optimal growth under proportional cost, with the best ``n`` per ``p``."""
    out = []
    for p in p_list:
        res = [bernoulli_cost_closed_form(p, n, epsilon) for n in range(1, n_max + 1)]
        best = 1 + int(np.argmax([r.g_star for r in res]))
        for r in res:
            out.append({"p": p, "n": r.n, "k_star": r.k_star, "g_star": r.g_star, "argmax_n": best})
    return out


FIG4_P_GRID = tuple(round(0.50 + 0.01 * i, 2) for i in range(46))
FIG4_N = (2, 5, 10)


def figure4_table(
    gamma: float = 0.5, p_grid: Iterable[float] = FIG4_P_GRID, n_list: Sequence[int] = FIG4_N
) -> list[dict]:
    """Gap ``g_1* - g_n*`` against ``p`` for the ``+-gamma`` coin flip."""
    n_max = max(n_list)
    out = []
    for p in p_grid:
        rows = frequency_sweep(bernoulli_pmf(p, gamma), n_max)
        for n in n_list:
            out.append({"p": p, "n": n, "g1_star": rows[0].g_star, "gn_star": rows[n - 1].g_star,
                        "e_star": rows[n - 1].e_star})
    return out


def figure5_table(a_grid: Iterable[float]) -> list[dict]:
    """``b_min(a)`` against ``|a|``, sorted by ``|a|``; both solution routes are kept."""
    out = []
    for a in sorted(a_grid, key=abs):
        out.append({"abs_a": abs(a), "b_min": b_min(a), "b_min_bisection": b_min_bisection(a),
                    "b_min_lambert": b_min_lambert(a)})
    return out


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def to_csv(rows, columns: Sequence[str] | None = None, source: str | None = None) -> str:
    """Serialise dicts or dataclass rows; ``source`` adds a ``# source=...`` line."""
    rows = [r if isinstance(r, dict) else asdict(r) for r in rows]
    if columns is None:
        columns = list(rows[0]) if rows else []
    buf = io.StringIO()
    if source:
        buf.write(f"# source={source}\n")
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(_cell(r[c]) for c in columns) + "\n")
    return buf.getvalue()


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    return to_csv(rows, SWEEP_COLUMNS)


def random_pmf(rng: np.random.Generator, lo: float = -0.95, hi: float = 3.0) -> ReturnPmf:
    """Random 3-6 atom distribution on ``(lo, hi)`` with Dirichlet(1) weights."""
    m = int(rng.integers(3, 7))
    while True:
        x = np.sort(rng.uniform(lo, hi, size=m))
        if np.all(np.diff(x) > 1e-9) and x[0] > -1.0:
            break
    p = rng.dirichlet(np.ones(m))
    p = np.maximum(p, 1e-6)
    p /= p.sum()
    return ReturnPmf(x, p, "random")


def random_attractive_pmfs(count: int, seed: int) -> list[ReturnPmf]:
    """Seeded sample of random distributions with ``theta <= 1`` (rejection sampling)."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        d = random_pmf(rng)
        if theta(d).theta <= 1.0:
            out.append(d)
    return out


def random_favourable_pmfs(count: int, seed: int) -> list[ReturnPmf]:
    """Seeded sample of random distributions with positive mean."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        d = random_pmf(rng)
        if d.mean > 0.0:
            out.append(d)
    return out
