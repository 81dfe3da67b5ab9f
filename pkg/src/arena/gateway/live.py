"""Live run loop: one protocol tick per day at the configured decision time.

The clock is injectable so the loop is testable at desk scale: a simulated
clock advances instantly to each decision time, the system clock sleeps.
Connector or provider outages surface as Gap/Failure events; the loop keeps
running. A stop request finishes the in-flight tick so the log always ends
on a record boundary.
"""

from __future__ import annotations

import datetime as dt
import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Protocol, Sequence

from ..persistence import EventLogWriter
from ..protocol import Agent
from ..session import MarketStore, RunConfig, SessionEngine


class RunMode(str, Enum):
    REPLAY = "Replay"
    LIVE = "Live"


class RunStatus(str, Enum):
    WARMING_UP = "WarmingUp"
    RUNNING = "Running"
    STOPPED = "Stopped"
    FAILED = "Failed"


_ALLOWED_TRANSITIONS = {
    RunStatus.WARMING_UP: {RunStatus.RUNNING, RunStatus.STOPPED, RunStatus.FAILED},
    RunStatus.RUNNING: {RunStatus.STOPPED, RunStatus.FAILED},
    RunStatus.STOPPED: set(),
    RunStatus.FAILED: set(),
}


@dataclass
class RunHandle:
    run_id: str
    mode: RunMode
    status: RunStatus = RunStatus.WARMING_UP
    started: dt.datetime = field(
        default_factory=lambda: dt.datetime.now(dt.timezone.utc))

    def transition(self, new: RunStatus) -> None:
        if new is self.status:
            return
        if new not in _ALLOWED_TRANSITIONS[self.status]:
            raise ValueError(f"illegal status transition {self.status} -> {new}")
        self.status = new

    def as_dict(self) -> dict:
        return {"run_id": self.run_id, "mode": self.mode.value,
                "status": self.status.value, "started": self.started.isoformat()}


class Clock(Protocol):
    def now(self) -> dt.datetime: ...
    def wait_until(self, target: dt.datetime, interrupted: Callable[[], bool]) -> None: ...


class SystemClock:
    poll_seconds = 1.0

    def now(self) -> dt.datetime:
        return dt.datetime.now(dt.timezone.utc)

    def wait_until(self, target: dt.datetime, interrupted: Callable[[], bool]) -> None:
        while self.now() < target and not interrupted():
            time.sleep(min(self.poll_seconds,
                           max(0.0, (target - self.now()).total_seconds())))


class SimulatedClock:
    """Jumps straight to each requested time; never blocks."""

    def __init__(self, start: dt.datetime):
        self._now = start

    def now(self) -> dt.datetime:
        return self._now

    def wait_until(self, target: dt.datetime, interrupted: Callable[[], bool]) -> None:
        if target > self._now:
            self._now = target


class LiveRunner:
    """Drives a SessionEngine from a clock, appending events durably.

    `feed(market, date)` pulls that day's prices and briefs into the store
    before the tick; feed errors are swallowed so the tick records gaps
    instead of killing the process.
    """

    def __init__(self, config: RunConfig, agents: Sequence[Agent],
                 market: MarketStore, log_path: str | Path,
                 feed: Callable[[MarketStore, dt.date], None] | None = None,
                 clock: Clock | None = None):
        self.config = config
        self.market = market
        self.feed = feed
        self.clock = clock or SystemClock()
        self.handle = RunHandle(run_id=config.run_id, mode=RunMode.LIVE)
        self._writer = EventLogWriter(log_path)
        self.engine = SessionEngine(config, agents, market,
                                    sink=lambda e: self._writer.append(e))
        self._stop = threading.Event()
        self.ticks = 0

    def stop(self) -> None:
        self._stop.set()

    def run(self) -> RunHandle:
        try:
            for date in self.config.session_dates():
                target = dt.datetime.combine(date, self.config.protocol.decision_time,
                                             tzinfo=dt.timezone.utc)
                self.clock.wait_until(target, self._stop.is_set)
                if self._stop.is_set():
                    break
                if self.clock.now() < target:
                    break  # system clock interrupted before reaching the tick
                if self.feed is not None:
                    try:
                        self.feed(self.market, date)
                    except Exception:
                        pass  # missing data becomes GapNoted in the tick
                self.engine.tick(date)
                self.ticks += 1
                if date >= self.config.live_start and self.handle.status is RunStatus.WARMING_UP:
                    self.handle.transition(RunStatus.RUNNING)
        except Exception:
            self.handle.transition(RunStatus.FAILED)
            raise
        finally:
            self._writer.close()
        self.handle.transition(RunStatus.STOPPED)
        return self.handle
