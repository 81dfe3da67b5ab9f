"""`arena` command-line entry points."""

from __future__ import annotations

import datetime as dt
import os
import sys
from pathlib import Path

import click

from ..persistence import IntegrityError, export_state, read_events, replay, run_log_path
from ..session import (
    MarketStore,
    load_run_config,
    make_agent,
    provider_factory_for,
)
from .live import LiveRunner, SimulatedClock, SystemClock

DEFAULT_DATA_ROOT = os.environ.get("ARENA_DATA_ROOT", ".")
DEFAULT_PORT = int(os.environ.get("ARENA_PORT", "8000"))


@click.group()
def main():
    """Trading benchmark harness: replayable agent sessions, metrics, leaderboard."""


def _load_log(run_dir: Path):
    log = run_dir / "events.log"
    if not log.exists():
        click.echo(f"error: no event log at {log}", err=True)
        sys.exit(2)
    try:
        return read_events(log)
    except IntegrityError as exc:
        click.echo(f"error: log integrity failure (first bad seq {exc.first_bad_seq}): {exc}",
                   err=True)
        sys.exit(3)


@main.command("replay")
@click.argument("run_dir", type=click.Path(path_type=Path))
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="Export directory (default: the run directory).")
def replay_cmd(run_dir: Path, out: Path | None):
    """Rebuild state from RUN_DIR/events.log and write metrics + leaderboard CSVs."""
    events = _load_log(run_dir)
    state = replay(events)
    paths = export_state(state, out or run_dir)
    click.echo(f"replayed {len(events)} events from run {state.run_id!r}")
    for name, path in paths.items():
        click.echo(f"wrote {name}: {path}")


@main.command()
@click.argument("run_dir", type=click.Path(path_type=Path))
def verify(run_dir: Path):
    """Integrity-scan RUN_DIR/events.log."""
    events = _load_log(run_dir)
    click.echo(f"ok: {len(events)} events, last seq "
               f"{events[-1].seq if events else 0}")


@main.command()
@click.argument("run_dir", type=click.Path(path_type=Path))
def report(run_dir: Path):
    """Print the run's leaderboard and summary counts."""
    state = replay(_load_log(run_dir))
    rows = state.leaderboard_rows()
    click.echo(f"run {state.run_id!r}: {state.event_count} events, "
               f"{len(state.decisions)} decisions, {len(state.gaps)} gaps, "
               f"{len(state.failures)} failures")
    header = f"{'rank':>4}  {'agent':<16} {'backbone':<14} {'asset':<6} "\
             f"{'CR%':>8} {'AR%':>9} {'AV%':>7} {'SR':>6} {'MDD%':>6}"
    click.echo(header)
    for r in rows:
        s = r.snapshot
        sr = "—" if s.SR is None else f"{s.SR:6.2f}"
        click.echo(f"{r.rank:>4}  {r.agent:<16} {r.backbone or '-':<14} {r.asset:<6} "
                   f"{100 * s.CR:8.2f} {100 * s.AR:9.2f} {100 * s.AV:7.2f} "
                   f"{sr:>6} {100 * s.MDD:6.2f}")


@main.command()
@click.argument("config_path", type=click.Path(exists=True, path_type=Path))
@click.option("--data-root", type=click.Path(path_type=Path),
              default=DEFAULT_DATA_ROOT, show_default=True)
@click.option("--simulate", is_flag=True,
              help="Drive the loop with a simulated clock (runs to completion).")
def live(config_path: Path, data_root: Path, simulate: bool):
    """Run the daily live loop for CONFIG_PATH, appending to the event log."""
    config, raw = load_run_config(config_path)
    config_dir = config_path.parent
    factory = provider_factory_for(raw, config_dir)
    agents = [make_agent(spec, config.protocol, factory) for spec in config.agent_specs]

    market = MarketStore()
    prices = raw.get("prices")
    if prices:
        price_path = config_dir / prices if not Path(prices).is_absolute() else Path(prices)
        market = MarketStore.from_fixtures(config, price_path)

    clock = SystemClock()
    if simulate:
        clock = SimulatedClock(dt.datetime.combine(
            config.warmup_start, dt.time(0, 0), tzinfo=dt.timezone.utc))
    runner = LiveRunner(config, agents, market,
                        log_path=run_log_path(Path(data_root), config.run_id),
                        clock=clock)
    handle = runner.run()
    click.echo(f"run {handle.run_id}: {runner.ticks} ticks, status {handle.status.value}")


@main.command()
@click.option("--data-root", type=click.Path(path_type=Path),
              default=DEFAULT_DATA_ROOT, show_default=True)
@click.option("--port", type=int, default=DEFAULT_PORT, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(data_root: Path, port: int, host: str):
    """Serve the leaderboard / equity HTTP API over the data root."""
    import uvicorn

    from .api import create_app

    uvicorn.run(create_app(data_root), host=host, port=port)


if __name__ == "__main__":
    main()
