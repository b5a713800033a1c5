"""Command-line front end.

JSON for single results, CSV for tables.  Exit status: 0 success, 1 computation
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import attractiveness as attr
from . import experiments as ex
from .growth import CostModel, optimize_growth
from .pmf import DEFAULT_CAP, ReturnPmf, bernoulli_pmf, total_return_pmf, uniform_pmf
from .simulate import SimConfig, simulate

DIST_FLAGS = ("--bernoulli", "--uniform", "--dist-file")
# argparse would read "-0.5,0.5" as an option string, so glue such values on.
_GLUE = DIST_FLAGS + ("--p-list", "--a-grid")


class UsageError(Exception):
    pass


def _floats(text: str, lo: int, hi: int, flag: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated numbers, got {text!r}") from None
    if not lo <= len(vals) <= hi:
        raise UsageError(f"{flag}: expected {lo}..{hi} values, got {len(vals)}")
    return vals


def _dist(args) -> ReturnPmf:
    given = [f for f in ("bernoulli", "uniform", "dist_file") if getattr(args, f, None) is not None]
    if len(given) != 1:
        raise UsageError("exactly one of --bernoulli, --uniform, --dist-file is required")
    if args.bernoulli is not None:
        p, gamma = (_floats(args.bernoulli, 1, 2, "--bernoulli") + [1.0])[:2]
        dist = bernoulli_pmf(p, gamma)
    elif args.uniform is not None:
        vals = _floats(args.uniform, 2, 3, "--uniform")
        m = int(vals[2]) if len(vals) == 3 else 256
        dist = uniform_pmf(vals[0], vals[1], m)
    else:
        dist = ReturnPmf.read_csv(args.dist_file)
    if getattr(args, "dump_dist", None):
        dist.write_csv(args.dump_dist)
    return dist


def _costs(args) -> CostModel:
    return CostModel(args.epsilon, args.r)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_optimize(args) -> str:
    dist = _dist(args)
    res = optimize_growth(total_return_pmf(dist, args.n, args.cap), _costs(args))
    return _json({"distribution": dist.label, **res.to_dict()})


def cmd_sweep(args) -> str:
    rows = ex.frequency_sweep(_dist(args), args.n_max, _costs(args), args.cap)
    return ex.sweep_csv(rows)


def cmd_attract(args) -> str:
    dist = _dist(args)
    out = {"distribution": dist.label, **attr.theta(dist).to_dict()}
    if args.uniform is not None:
        a, b = _floats(args.uniform, 2, 3, "--uniform")[:2]
        out["theta_closed_form"] = attr.uniform_theta(a, b)
        out["b_min"] = attr.b_min(a)
    elif len(dist) == 2 and dist.straddles_zero:
        out["p_threshold"] = attr.bernoulli_threshold(dist.x_min, dist.x_max)
    return _json(out)


def cmd_costs(args) -> str:
    rows = ex.figure3_table(_floats(args.p_list, 1, 1000, "--p-list"), args.n_max, args.epsilon)
    return ex.to_csv(rows, source="figure3")


def cmd_bmin(args) -> str:
    if args.a_grid:
        grid = _floats(args.a_grid, 1, 100000, "--a-grid")
    else:
        grid = [-0.01 * i for i in range(1, 100)]
    return ex.to_csv(ex.figure5_table(grid), source="figure5")


def cmd_figure2(args) -> str:
    rows = ex.figure2_table(_floats(args.p_list, 1, 1000, "--p-list"), args.n_max)
    return ex.to_csv(rows, source="figure2")


def cmd_figure4(args) -> str:
    n_list = [int(v) for v in _floats(args.n_list, 1, 100, "--n-list")]
    return ex.to_csv(ex.figure4_table(args.gamma, ex.FIG4_P_GRID, n_list), source="figure4")


def cmd_simulate(args) -> str:
    dist = _dist(args)
    costs = _costs(args)
    k = args.k
    if k is None:
        k = optimize_growth(total_return_pmf(dist, args.n, args.cap), costs).k_star
    cfg = SimConfig(k=k, n=args.n, horizon=args.horizon, trials=args.trials, seed=args.seed, costs=costs)
    res = simulate(dist, cfg, trajectory_path=args.trajectory)
    return _json({"distribution": dist.label, "k": k, "n": args.n, "horizon": args.horizon,
                  "seed": args.seed, **res.to_dict()})


def cmd_conjectures(args) -> str:
    dist = _dist(args)
    rows = ex.frequency_sweep(dist, args.n_max, cap=args.cap)
    c1 = ex.conjecture1_scan(dist, args.n_max, args.tol, rows=rows)
    c2 = ex.conjecture2_scan(dist, args.n_max, args.eq_tol, rows=rows)
    return _json({"distribution": dist.label, "conjecture1": c1.to_dict(), "conjecture2": c2.to_dict()})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kellyfreq", description="Kelly betting-frequency analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    dist = argparse.ArgumentParser(add_help=False, parents=[common])
    g = dist.add_argument_group("distribution (exactly one)")
    g.add_argument("--bernoulli", metavar="P[,GAMMA]", help="win +GAMMA w.p. P, else lose GAMMA (GAMMA defaults to 1)")
    g.add_argument("--uniform", metavar="A,B[,M]", help="uniform on [A,B], midpoint rule with M atoms (default 256)")
    g.add_argument("--dist-file", metavar="PATH", help="CSV with header x,p")
    g.add_argument("--dump-dist", metavar="PATH", help="also write the distribution as x,p CSV")
    dist.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max atoms in the total-return distribution")

    costs = argparse.ArgumentParser(add_help=False)
    costs.add_argument("--epsilon", type=float, default=0.0, help="transaction cost per bet update")
    costs.add_argument("--r", type=float, default=0.0, help="per-period interest on idle cash")

    p = sub.add_parser("optimize", parents=[dist, costs], help="optimal fraction for one n (JSON)")
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", parents=[dist, costs], help="optimum for n = 1..n_max (CSV)")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("attract", parents=[dist], help="sufficient-attractiveness report (JSON)")
    p.set_defaults(func=cmd_attract)

    p = sub.add_parser("costs", parents=[common], help="coin flip under transaction cost, n = 1..n_max (CSV)")
    p.add_argument("--p-list", default="0.6,0.7,0.8,0.9")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.set_defaults(func=cmd_costs)

    p = sub.add_parser("bmin", parents=[common], help="b_min(a) against |a| for uniform returns (CSV)")
    p.add_argument("--a-grid", help="comma-separated a values in (-1, 0); default -0.01..-0.99")
    p.set_defaults(func=cmd_bmin)

    p = sub.add_parser("figure2", parents=[common], help="coin-flip optimal growth against n (CSV)")
    p.add_argument("--p-list", default="0.6,0.7,0.8,0.9")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_figure2)

    p = sub.add_parser("figure4", parents=[common], help="g_1* - g_n* against p for the +-gamma coin flip (CSV)")
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--n-list", default="2,5,10")
    p.set_defaults(func=cmd_figure4)

    p = sub.add_parser("simulate", parents=[dist, costs], help="Monte Carlo wealth simulation (JSON)")
    p.add_argument("--k", type=float, help="fraction to bet (default: the optimum for --n)")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--horizon", type=int, default=10_000)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trajectory", metavar="PATH", help="dump trial,step,v CSV (large)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("conjectures", parents=[dist], help="monotonicity and flatness scans (JSON)")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--tol", type=float, default=ex.CONJ1_TOL)
    p.add_argument("--eq-tol", type=float, default=ex.FLAT_TOL)
    p.set_defaults(func=cmd_conjectures)
    return parser


def _glue(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for a in it:
        if a in _GLUE:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"kellyfreq: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"kellyfreq: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
