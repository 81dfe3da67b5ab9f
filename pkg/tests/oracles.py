"""Independent brute-force oracles used to check engine math.

Deliberately naive implementations (plain loops, O(T^2) scans) that share no
code with the arena package internals.
"""

import math


def product_cumulative_return(returns):
    acc = 1.0
    for r in returns:
        acc *= 1.0 + r
    return acc - 1.0


def two_pass_sample_std(returns):
    n = len(returns)
    mean = sum(returns) / n
    if n < 2:
        return 0.0
    var = sum((r - mean) ** 2 for r in returns) / (n - 1)
    return math.sqrt(var)


def annualized_vol_oracle(returns, ppy):
    return math.sqrt(ppy) * two_pass_sample_std(returns)


def sharpe_oracle(returns, ppy):
    mean = sum(returns) / len(returns)
    std = two_pass_sample_std(returns)
    if std == 0.0:
        return 0.0 if mean == 0.0 else None
    return math.sqrt(ppy) * mean / std


def max_drawdown_quadratic(returns):
    """O(T^2) peak/trough scan over the equity curve (1.0 prepended)."""
    equity = [1.0]
    for r in returns:
        equity.append(equity[-1] * (1.0 + r))
    worst = 0.0
    for t in range(1, len(equity)):
        peak = max(equity[: t + 1])
        worst = max(worst, (peak - equity[t]) / peak)
    return worst


def vote_counting_oracle(actions):
    """Majority by explicit counting; None when the maximum is tied."""
    counts = {}
    for a in actions:
        counts[a] = counts.get(a, 0) + 1
    best = max(counts.values())
    winners = [a for a, c in counts.items() if c == best]
    return winners[0] if len(winners) == 1 else None


def unique_by_id(items):
    out = []
    seen = set()
    for item in items:
        if item.id not in seen:
            seen.add(item.id)
            out.append(item)
    return out
