"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot loops that dominate model fitting — the Kalman filter
pass behind the exact likelihood and the CSS innovation recursion — on
every importable backend, then an end-to-end ``estimate_mle`` fit with the
default backend for scale.

Run with::

    python benchmarks/bench_kernels.py
"""

import time
import timeit

import numpy as np

from pubgrowth._kernels import BACKEND, backends
from pubgrowth.arima import ArimaOrder, estimate_mle
from pubgrowth.arima.estimate import statespace
from pubgrowth.series import DailySeries, INCREMENTS

SIZES = (200, 1000, 5000)
PHI = [0.5, 0.2]
THETA = [0.3]


def best_of(fn, repeat=5, number=10):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main():
    rng = np.random.default_rng(0)
    mods = backends()
    print(f"available backends: {', '.join(mods)} (default: {BACKEND})")
    T, R, P0 = statespace(PHI, THETA)

    header = f"{'kernel':<14}{'n':>7}" + "".join(f"{name:>14}" for name in mods)
    print(header)
    print("-" * len(header))
    for n in SIZES:
        y = rng.normal(size=n)
        times = {name: best_of(lambda m=mod: m.kalman_run(y, T, R, P0)) for name, mod in mods.items()}
        row = f"{'kalman_run':<14}{n:>7}" + "".join(f"{times[name] * 1e6:>12.1f}us" for name in mods)
        if len(times) > 1:
            vals = list(times.values())
            row += f"   ({max(vals) / min(vals):.1f}x)"
        print(row)
    for n in SIZES:
        y = rng.normal(size=n)
        times = {
            name: best_of(lambda m=mod: m.css_residuals(y, PHI, THETA, 0.0))
            for name, mod in mods.items()
        }
        row = f"{'css_residuals':<14}{n:>7}" + "".join(f"{times[name] * 1e6:>12.1f}us" for name in mods)
        if len(times) > 1:
            vals = list(times.values())
            row += f"   ({max(vals) / min(vals):.1f}x)"
        print(row)

    series = DailySeries("2020-03-01", np.cumsum(rng.normal(loc=2.0, size=1000)), INCREMENTS)
    start = time.perf_counter()
    estimate_mle(series, ArimaOrder(2, 0, 1))
    print(f"\nestimate_mle ARMA(2,1), n=1000, backend={BACKEND}: "
          f"{(time.perf_counter() - start) * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
