"""Time the hot paths under the numba kernels and under the pure-numpy fallback.

Each backend runs in its own interpreter because the choice is made at import
time from ``KELLYFREQ_PURE_NUMPY``.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
import kellyfreq as kf

repeat = int(sys.argv[1])

def best(fn):
    fn()  # warm-up, includes JIT compilation / cache load
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)

uni = kf.uniform_pmf(-0.2, 1.0, 256)
coin = kf.bernoulli_pmf(0.7, 0.5)
rand = kf.experiments.random_favourable_pmfs(50, 1)
cases = {
    "sweep uniform m=256 n<=20": lambda: kf.frequency_sweep(uni, 20),
    "sweep 50 random pmfs n<=8": lambda: [kf.frequency_sweep(d, 8) for d in rand],
    "theorem-1 grid (90 optimisations)": lambda: [
        kf.optimize_growth(kf.total_return_pmf(kf.bernoulli_pmf(p, 1.0), n))
        for p in [0.55 + 0.05 * i for i in range(9)] for n in range(1, 11)
    ],
    "simulate 200 x 10^4 periods, n=5": lambda: kf.simulate(coin, kf.SimConfig(k=0.9, n=5, horizon=10_000, trials=200)),
}
print(json.dumps({"backend": kf.BACKEND, "timings": {k: best(f) for k, f in cases.items()}}))
"""


def run(pure_numpy: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if pure_numpy:
        env["KELLYFREQ_PURE_NUMPY"] = "1"
    else:
        env.pop("KELLYFREQ_PURE_NUMPY", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'case':<40}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for case, t_fast in fast["timings"].items():
        t_slow = slow["timings"][case]
        print(f"{case:<40}{t_fast:>11.3f}s{t_slow:>11.3f}s{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
