"""Performance metrics over daily net return series.

Conventions, fixed for the whole harness:
- annualization basis is per asset class: 252 periods/year for equities,
  365 for crypto;
- standard deviation uses the sample (T-1) denominator;
- Sharpe = (annualized arithmetic mean excess return) / (annualized
  volatility), risk-free rate 0 by default; a zero-volatility window with
  nonzero mean has no defined Sharpe and is encoded as None;
- drawdown is measured on the equity curve prod(1 + r_i) with the starting
  equity 1.0 included in the peak history.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import cumulative_return_kernel, equity_curve_kernel, max_drawdown_kernel

PERIODS_PER_YEAR = {"Equity": 252, "Crypto": 365}


@dataclass(frozen=True)
class MetricsWindow:
    returns: tuple[float, ...]
    periods_per_year: int
    risk_free: float = 0.0

    def __post_init__(self):
        if not self.returns:
            raise ValueError("a metrics window needs at least one return")
        if any(r <= -1 for r in self.returns):
            raise ValueError("every return must exceed -1")
        if self.periods_per_year <= 0:
            raise ValueError("periods_per_year must be positive")

    @property
    def T(self) -> int:
        return len(self.returns)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.returns, dtype=np.float64)


@dataclass(frozen=True)
class MetricsSnapshot:
    CR: float
    AR: float
    AV: float
    SR: float | None  # None marks the undefined zero-volatility case
    MDD: float
    as_of: dt.date


def cumulative_return(w: MetricsWindow) -> float:
    """prod(1 + r_i) - 1."""
    return float(cumulative_return_kernel(w.as_array()))


def annualized_return(cr: float, T: int, ppy: int) -> float:
    """(1 + CR)^(ppy/T) - 1."""
    if cr <= -1:
        raise ValueError(f"cumulative return must exceed -1, got {cr!r}")
    if T < 1:
        raise ValueError("period count must be >= 1")
    return (1.0 + cr) ** (ppy / T) - 1.0


def annualized_volatility(w: MetricsWindow) -> float:
    """sqrt(ppy) x sample standard deviation of the daily returns."""
    r = w.as_array()
    if w.T == 1:
        if r[0] == 0.0:
            return 0.0
        raise ValueError("volatility needs at least 2 returns (or an all-zero window)")
    std = float(np.std(r, ddof=1))
    return math.sqrt(w.periods_per_year) * std


def sharpe_ratio(w: MetricsWindow) -> float | None:
    """(ppy x mean(r) - r_f) / annualized volatility.

    Zero volatility with zero mean is 0; zero volatility with nonzero mean
    has no defined value and returns None.
    """
    r = w.as_array()
    mean = float(np.mean(r))
    av = annualized_volatility(w)
    if av == 0.0:
        return 0.0 if mean == 0.0 else None
    return (w.periods_per_year * mean - w.risk_free) / av


def max_drawdown(w: MetricsWindow) -> float:
    """Largest fractional fall of the equity curve from any running peak."""
    return float(max_drawdown_kernel(w.as_array()))


def equity_curve(returns: Sequence[float]) -> np.ndarray:
    """Running prod(1 + r_i) for a return sequence, starting from 1.0."""
    return equity_curve_kernel(np.asarray(returns, dtype=np.float64))


def compute_snapshot(returns: Sequence[float], periods_per_year: int,
                     as_of: dt.date, risk_free: float = 0.0) -> MetricsSnapshot:
    w = MetricsWindow(returns=tuple(returns), periods_per_year=periods_per_year,
                      risk_free=risk_free)
    cr = cumulative_return(w)
    return MetricsSnapshot(
        CR=cr,
        AR=annualized_return(cr, w.T, periods_per_year),
        AV=annualized_volatility(w),
        SR=sharpe_ratio(w),
        MDD=max_drawdown(w),
        as_of=as_of,
    )
