"""Leaderboard assembly: filter on four axes, rank by cumulative return."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from .metrics import MetricsSnapshot

FILTER_DIMENSIONS = ("agents", "assets", "models", "strategies")


@dataclass(frozen=True)
class LeaderboardFilter:
    """Empty set on any axis means that axis is unconstrained."""
    agents: frozenset[str] = frozenset()
    assets: frozenset[str] = frozenset()
    models: frozenset[str] = frozenset()
    strategies: frozenset[str] = frozenset()

    def matches(self, row: "LeaderboardRow") -> bool:
        return ((not self.agents or row.agent in self.agents)
                and (not self.assets or row.asset in self.assets)
                and (not self.models or row.backbone in self.models)
                and (not self.strategies or row.strategy in self.strategies))


@dataclass(frozen=True)
class LeaderboardRow:
    agent: str       # framework name
    backbone: str
    asset: str
    strategy: str
    snapshot: MetricsSnapshot
    rank: int = 0


def _sort_key(row: LeaderboardRow):
    sr = row.snapshot.SR if row.snapshot.SR is not None else float("-inf")
    # CR descending, ties by SR descending, then stable name order.
    return (-row.snapshot.CR, -sr, row.agent, row.backbone, row.asset, row.strategy)


def leaderboard(rows: Iterable[LeaderboardRow],
                flt: LeaderboardFilter = LeaderboardFilter()) -> list[LeaderboardRow]:
    """Rows matching all four filter axes, ranked 1..N by CR descending."""
    kept = sorted((r for r in rows if flt.matches(r)), key=_sort_key)
    return [replace(r, rank=i + 1) for i, r in enumerate(kept)]


METRICS_CSV_HEADER = ["agent", "backbone", "asset", "strategy", "as_of",
                      "CR", "AR", "AV", "SR", "MDD"]


def _pct(x: float) -> str:
    return f"{100.0 * x:.2f}"


def format_sr(sr: float | None) -> str:
    return "—" if sr is None else f"{sr:.2f}"


def metrics_csv_rows(rows: Sequence[LeaderboardRow]) -> list[list[str]]:
    out = [list(METRICS_CSV_HEADER)]
    for r in rows:
        s = r.snapshot
        out.append([r.agent, r.backbone, r.asset, r.strategy, s.as_of.isoformat(),
                    _pct(s.CR), _pct(s.AR), _pct(s.AV), format_sr(s.SR), _pct(s.MDD)])
    return out


def write_metrics_csv(path: str | Path, rows: Sequence[LeaderboardRow]) -> None:
    with open(path, "w", newline="") as f:
        csv.writer(f).writerows(metrics_csv_rows(rows))


LEADERBOARD_CSV_HEADER = ["rank", "agent", "backbone", "asset", "strategy",
                          "CR", "AR", "AV", "SR", "MDD"]


def write_leaderboard_csv(path: str | Path, rows: Sequence[LeaderboardRow]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(LEADERBOARD_CSV_HEADER)
        for r in rows:
            s = r.snapshot
            w.writerow([r.rank, r.agent, r.backbone, r.asset, r.strategy,
                        _pct(s.CR), _pct(s.AR), _pct(s.AV), format_sr(s.SR), _pct(s.MDD)])
