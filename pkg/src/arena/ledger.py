"""Portfolio accounting: signals and prices in, returns and equity out.

The position model is the full directional exposure implied by the daily
signal: +1 long the whole (normalized) portfolio, -1 short it, 0 flat.
Equity starts at 1.0 and compounds multiplicatively; fees, when enabled,
are charged on the days the position changes.
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable


@dataclass(frozen=True)
class FeeModel:
    fee_bps: float = 0.0  # basis points per position change

    def __post_init__(self):
        if self.fee_bps < 0:
            raise ValueError("fee_bps must be >= 0")

    @property
    def fraction(self) -> float:
        return self.fee_bps / 10_000.0


@dataclass(frozen=True)
class ReturnRecord:
    agent: str
    asset: str
    date: dt.date
    signal: int
    gross_return: float
    net_return: float
    equity: float


@dataclass(frozen=True)
class EquityPoint:
    date: dt.date
    equity: float

    @property
    def cumulative_return(self) -> float:
        return self.equity - 1.0


def daily_return(signal: int, p_prev: float, p_curr: float) -> float:
    """signal x (p_curr - p_prev) / p_prev."""
    if signal not in (-1, 0, 1):
        raise ValueError(f"signal must be in {{-1, 0, 1}}, got {signal!r}")
    if p_prev <= 0 or p_curr <= 0:
        raise ValueError(f"prices must be positive, got {p_prev!r} -> {p_curr!r}")
    return signal * (p_curr - p_prev) / p_prev


def apply_fees(gross: float, position_changed: bool, fees: FeeModel) -> float:
    """Net return after the per-change fee: (1 + gross)(1 - fee) - 1."""
    if gross <= -1:
        raise ValueError(f"gross return must exceed -1, got {gross!r}")
    if not position_changed or fees.fee_bps == 0:
        return gross
    return (1.0 + gross) * (1.0 - fees.fraction) - 1.0


def update_equity(prev: EquityPoint, date: dt.date, net_return: float) -> EquityPoint:
    if net_return <= -1:
        raise ValueError(f"net return must exceed -1, got {net_return!r}")
    return EquityPoint(date=date, equity=prev.equity * (1.0 + net_return))


class PortfolioLedger:
    """Running accounting state for one (agent, asset) pair."""

    def __init__(self, agent: str, asset: str, fees: FeeModel = FeeModel()):
        self.agent = agent
        self.asset = asset
        self.fees = fees
        self.equity = 1.0
        self.position = 0  # signal currently applied
        self.records: list[ReturnRecord] = []

    def fill(self, date: dt.date, signal: int, p_prev: float, p_curr: float) -> ReturnRecord:
        """Apply one close-to-close period under `signal`.

        The fee is charged when the signal differs from the previously
        applied one (a position change at the period's opening close).
        """
        gross = daily_return(signal, p_prev, p_curr)
        changed = signal != self.position
        net = apply_fees(gross, changed, self.fees)
        self.equity *= 1.0 + net
        self.position = signal
        rec = ReturnRecord(agent=self.agent, asset=self.asset, date=date,
                           signal=signal, gross_return=gross, net_return=net,
                           equity=self.equity)
        self.records.append(rec)
        return rec


RETURNS_CSV_HEADER = ["agent", "asset", "date", "signal",
                      "gross_return", "net_return", "equity"]


def write_returns_csv(path: str | Path, records: Iterable[ReturnRecord]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(RETURNS_CSV_HEADER)
        for r in records:
            w.writerow([r.agent, r.asset, r.date.isoformat(), r.signal,
                        repr(r.gross_return), repr(r.net_return), repr(r.equity)])
