"""Compare the numba and pure-numpy metric kernels.

Each mode runs in a subprocess so the ARENA_NO_NUMBA import-time switch takes
effect cleanly. Usage:

    python3 benchmarks/bench_metrics.py [--sizes 64,1024,65536] [--repeats 200]
"""

import argparse
import json
import os
import subprocess
import sys

_WORKER = r"""
import json, os, sys, time
import numpy as np
from arena.analytics import _kernels as k

sizes = json.loads(sys.argv[1])
repeats = int(sys.argv[2])
rng = np.random.default_rng(1234)

results = {"using_numba": k.USING_NUMBA, "timings": {}}
for n in sizes:
    returns = rng.uniform(-0.05, 0.05, size=n)
    # Warm-up pass so numba's compile time stays out of the measurement.
    k.equity_curve_kernel(returns)
    k.max_drawdown_kernel(returns)
    k.cumulative_return_kernel(returns)
    timings = {}
    for name, fn in [("equity_curve", k.equity_curve_kernel),
                     ("max_drawdown", k.max_drawdown_kernel),
                     ("cumulative_return", k.cumulative_return_kernel)]:
        start = time.perf_counter()
        for _ in range(repeats):
            fn(returns)
        timings[name] = (time.perf_counter() - start) / repeats
    results["timings"][str(n)] = timings
print(json.dumps(results))
"""


def run_mode(no_numba: bool, sizes, repeats):
    env = dict(os.environ, ARENA_NO_NUMBA="1" if no_numba else "")
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, json.dumps(sizes), str(repeats)],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="64,1024,65536")
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    numba_res = run_mode(False, sizes, args.repeats)
    numpy_res = run_mode(True, sizes, args.repeats)
    if not numba_res["using_numba"]:
        print("warning: numba unavailable; both columns are the numpy path")

    print(f"{'kernel':<20} {'n':>8} {'numba (us)':>12} {'numpy (us)':>12} {'speedup':>8}")
    for n in sizes:
        for name in ("equity_curve", "max_drawdown", "cumulative_return"):
            t_nb = numba_res["timings"][str(n)][name] * 1e6
            t_np = numpy_res["timings"][str(n)][name] * 1e6
            ratio = t_np / t_nb if t_nb > 0 else float("inf")
            print(f"{name:<20} {n:>8} {t_nb:>12.2f} {t_np:>12.2f} {ratio:>7.2f}x")


if __name__ == "__main__":
    main()
