"""Performance analytics: return-series metrics and leaderboard assembly."""

from ._kernels import USING_NUMBA
from .leaderboard import (
    FILTER_DIMENSIONS,
    LeaderboardFilter,
    LeaderboardRow,
    leaderboard,
    metrics_csv_rows,
    write_leaderboard_csv,
    write_metrics_csv,
)
from .metrics import (
    PERIODS_PER_YEAR,
    MetricsSnapshot,
    MetricsWindow,
    annualized_return,
    annualized_volatility,
    compute_snapshot,
    cumulative_return,
    equity_curve,
    max_drawdown,
    sharpe_ratio,
)

__all__ = [
    "USING_NUMBA",
    "FILTER_DIMENSIONS",
    "LeaderboardFilter",
    "LeaderboardRow",
    "leaderboard",
    "metrics_csv_rows",
    "write_leaderboard_csv",
    "write_metrics_csv",
    "PERIODS_PER_YEAR",
    "MetricsSnapshot",
    "MetricsWindow",
    "annualized_return",
    "annualized_volatility",
    "compute_snapshot",
    "cumulative_return",
    "equity_curve",
    "max_drawdown",
    "sharpe_ratio",
]
