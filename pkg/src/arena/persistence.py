"""Append-only event log and deterministic replay.

Every run writes one `events.log` under `runs/<run_id>/`. A record is one
line: `<payload length>:<payload json>#<crc32 hex>`. The length prefix and
checksum make truncation and corruption detectable; a partial final record
(crash tail) is discarded on read, corruption anywhere earlier is an
integrity error naming the first bad sequence number.

Replay is a pure fold over the event list: ledgers, metric snapshots, and
leaderboard exports are all derived state, so two replays of the same bytes
produce identical exports.
"""

from __future__ import annotations

import datetime as dt
import json
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .analytics import (
    PERIODS_PER_YEAR,
    LeaderboardRow,
    compute_snapshot,
    leaderboard,
    write_leaderboard_csv,
    write_metrics_csv,
)

EVENT_KINDS = (
    "PriceObserved", "BriefPublished", "DecisionRequested", "DecisionMade",
    "FillApplied", "SnapshotEmitted", "GapNoted", "FailureNoted",
)

class IntegrityError(RuntimeError):
    def __init__(self, message: str, first_bad_seq: int):
        super().__init__(message)
        self.first_bad_seq = first_bad_seq


@dataclass(frozen=True)
class ArenaEvent:
    seq: int
    run_id: str
    date: dt.date
    kind: str
    payload: dict

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")


def encode_event(event: ArenaEvent) -> str:
    body = json.dumps(
        {"seq": event.seq, "run_id": event.run_id, "date": event.date.isoformat(),
         "kind": event.kind, "payload": event.payload},
        sort_keys=True, separators=(",", ":"))
    checksum = zlib.crc32(body.encode("utf-8"))
    return f"{len(body)}:{body}#{checksum:08x}\n"


def _decode_line(line: str) -> ArenaEvent:
    head, _, rest = line.partition(":")
    length = int(head)
    body, checksum_hex = rest[:length], rest[length:]
    if not checksum_hex.startswith("#") or len(checksum_hex) != 9:
        raise ValueError("malformed record framing")
    if zlib.crc32(body.encode("utf-8")) != int(checksum_hex[1:], 16):
        raise ValueError("checksum mismatch")
    rec = json.loads(body)
    return ArenaEvent(seq=rec["seq"], run_id=rec["run_id"],
                      date=dt.date.fromisoformat(rec["date"]),
                      kind=rec["kind"], payload=rec["payload"])


class EventLogWriter:
    """Single appender for one run's log. Appends are flushed before ack."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.last_seq = 0
        if self.path.exists():
            events = read_events(self.path)
            if events:
                self.last_seq = events[-1].seq
        self._f = open(self.path, "a")

    def append(self, event: ArenaEvent) -> int:
        if event.seq != self.last_seq + 1:
            raise IntegrityError(
                f"sequence {event.seq} after {self.last_seq}: log is strictly append-only",
                first_bad_seq=event.seq)
        self._f.write(encode_event(event))
        self._f.flush()
        self.last_seq = event.seq
        return event.seq

    def close(self) -> None:
        self._f.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_events(path: str | Path) -> list[ArenaEvent]:
    """Integrity-scanned events. Discards a partial crash tail; raises
    IntegrityError on corruption before the final record."""
    raw = Path(path).read_text()
    events: list[ArenaEvent] = []
    lines = raw.split("\n")
    trailing = lines.pop()  # text after the last newline; non-empty = partial tail
    for i, line in enumerate(lines):
        if not line:
            continue
        is_last = i == len(lines) - 1 and not trailing
        try:
            event = _decode_line(line)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            if is_last:
                break  # corrupt tail record, discard
            raise IntegrityError(f"corrupt record at line {i + 1}: {exc}",
                                 first_bad_seq=(events[-1].seq + 1) if events else 1)
        expected = (events[-1].seq + 1) if events else 1
        if event.seq != expected:
            raise IntegrityError(f"sequence gap: expected {expected}, found {event.seq}",
                                 first_bad_seq=expected)
        events.append(event)
    return events


# --- Replay ------------------------------------------------------------------

@dataclass
class SeriesState:
    agent: str
    framework: str
    backbone: str
    strategy: str
    symbol: str
    fills: list[dict] = field(default_factory=list)

    def live_returns(self) -> list[float]:
        return [f["net_return"] for f in self.fills if f["phase"] == "live"]

    def live_equity_points(self) -> list[tuple[str, float]]:
        points = []
        equity = 1.0
        for f in self.fills:
            if f["phase"] != "live":
                continue
            equity *= 1.0 + f["net_return"]
            points.append((f["date"], equity))
        return points


@dataclass
class ArenaState:
    run_id: str = ""
    asset_classes: dict[str, str] = field(default_factory=dict)
    prices: dict[tuple[str, str], float] = field(default_factory=dict)
    briefs: dict[tuple[str, str], dict] = field(default_factory=dict)
    decisions: list[dict] = field(default_factory=list)
    series: dict[tuple[str, str], SeriesState] = field(default_factory=dict)
    gaps: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    last_date: dt.date | None = None
    event_count: int = 0

    def leaderboard_rows(self) -> list[LeaderboardRow]:
        rows = []
        for (agent, symbol), s in sorted(self.series.items()):
            returns = s.live_returns()
            if not returns:
                continue
            ppy = PERIODS_PER_YEAR[self.asset_classes[symbol]]
            live_dates = [f["date"] for f in s.fills if f["phase"] == "live"]
            as_of = dt.date.fromisoformat(live_dates[-1])
            rows.append(LeaderboardRow(
                agent=s.framework, backbone=s.backbone, asset=symbol,
                strategy=s.strategy,
                snapshot=compute_snapshot(returns, ppy, as_of)))
        return leaderboard(rows)

    def equity_series(self) -> dict[str, list[tuple[str, float]]]:
        """Live-phase equity curves keyed `framework-asset-backbone`."""
        out = {}
        for (agent, symbol), s in sorted(self.series.items()):
            points = s.live_equity_points()
            if points:
                out[f"{s.framework}-{symbol}-{s.backbone or 'none'}"] = points
        return out


def replay(events: Sequence[ArenaEvent]) -> ArenaState:
    """Pure fold of the event list into arena state."""
    state = ArenaState()
    for e in events:
        state.event_count += 1
        state.last_date = e.date
        if state.run_id == "":
            state.run_id = e.run_id
        p = e.payload
        if e.kind == "PriceObserved":
            state.asset_classes[p["symbol"]] = p["asset_class"]
            state.prices[(p["symbol"], e.date.isoformat())] = p["close"]
        elif e.kind == "BriefPublished":
            state.briefs[(p["symbol"], e.date.isoformat())] = p
        elif e.kind == "DecisionMade":
            state.decisions.append({"date": e.date.isoformat(), **p})
        elif e.kind == "FillApplied":
            key = (p["agent"], p["symbol"])
            if key not in state.series:
                state.series[key] = SeriesState(
                    agent=p["agent"], framework=p["framework"],
                    backbone=p.get("backbone") or "",
                    strategy=p.get("strategy") or "baseline",
                    symbol=p["symbol"])
            state.series[key].fills.append({"date": e.date.isoformat(), **p})
        elif e.kind == "GapNoted":
            state.gaps.append({"date": e.date.isoformat(), **p})
        elif e.kind == "FailureNoted":
            state.failures.append({"date": e.date.isoformat(), **p})
        # DecisionRequested and SnapshotEmitted carry no foldable state:
        # snapshots are always recomputed from fills.
    return state


def replay_log(path: str | Path) -> ArenaState:
    return replay(read_events(path))


def export_state(state: ArenaState, out_dir: str | Path) -> dict[str, Path]:
    """Write the metrics and leaderboard CSV exports; returns their paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = state.leaderboard_rows()
    metrics_path = out_dir / "metrics.csv"
    board_path = out_dir / "leaderboard.csv"
    write_metrics_csv(metrics_path, rows)
    write_leaderboard_csv(board_path, rows)
    return {"metrics": metrics_path, "leaderboard": board_path}


def run_log_path(data_root: str | Path, run_id: str) -> Path:
    return Path(data_root) / "runs" / run_id / "events.log"
