"""Hot numeric kernels over daily return series.

Two implementations: numba @njit and pure numpy. Selection happens at import
time: set ARENA_NO_NUMBA=1 to force the numpy path (also used automatically
when numba is not importable). `USING_NUMBA` reports which path is active;
benchmarks/bench_metrics.py compares the two.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("ARENA_NO_NUMBA", "").strip() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("numba disabled via ARENA_NO_NUMBA")
    from numba import njit

    USING_NUMBA = True
except ImportError:
    USING_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def _equity_curve_nb(returns):
    out = np.empty(returns.shape[0], dtype=np.float64)
    acc = 1.0
    for i in range(returns.shape[0]):
        acc *= 1.0 + returns[i]
        out[i] = acc
    return out


def _equity_curve_np(returns):
    return np.cumprod(1.0 + returns)


@njit(cache=True)
def _max_drawdown_nb(returns):
    peak = 1.0  # initial equity is part of the peak history
    acc = 1.0
    worst = 0.0
    for i in range(returns.shape[0]):
        acc *= 1.0 + returns[i]
        if acc > peak:
            peak = acc
        dd = (peak - acc) / peak
        if dd > worst:
            worst = dd
    return worst


def _max_drawdown_np(returns):
    equity = np.cumprod(1.0 + returns)
    peaks = np.maximum.accumulate(np.concatenate((np.ones(1), equity)))[1:]
    if equity.size == 0:
        return 0.0
    return float(np.max((peaks - equity) / peaks, initial=0.0))


@njit(cache=True)
def _cumulative_return_nb(returns):
    acc = 1.0
    for i in range(returns.shape[0]):
        acc *= 1.0 + returns[i]
    return acc - 1.0


def _cumulative_return_np(returns):
    return float(np.prod(1.0 + returns)) - 1.0


if USING_NUMBA:
    equity_curve_kernel = _equity_curve_nb
    max_drawdown_kernel = _max_drawdown_nb
    cumulative_return_kernel = _cumulative_return_nb
else:
    equity_curve_kernel = _equity_curve_np
    max_drawdown_kernel = _max_drawdown_np
    cumulative_return_kernel = _cumulative_return_np
