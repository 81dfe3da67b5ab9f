"""HTTP API serving leaderboard and equity-curve queries over run logs.

Every payload is a pure projection of the event logs under the data root.
Responses carry a data-version token derived from the log bytes so a polling
dashboard can skip unchanged payloads. Query filters accept exactly the four
dimensions agents / assets / models / strategies; anything else is a client
error.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from types import SimpleNamespace

from fastapi import FastAPI, HTTPException, Request

from ..analytics import LeaderboardFilter
from ..persistence import ArenaState, replay_log
from .live import LiveRunner, RunHandle, RunMode, RunStatus

FILTER_PARAMS = ("agents", "assets", "models", "strategies")


class RunRegistry:
    """Known runs: every runs/<id>/events.log under the data root, plus any
    directories registered through POST /runs/replay."""

    def __init__(self, data_root: str | Path):
        self.data_root = Path(data_root)
        self._extra_dirs: dict[str, Path] = {}
        self._handles: dict[str, RunHandle] = {}
        self._runners: dict[str, LiveRunner] = {}
        self._cache: dict[str, tuple[tuple, ArenaState]] = {}

    def log_paths(self) -> dict[str, Path]:
        paths: dict[str, Path] = {}
        runs_dir = self.data_root / "runs"
        if runs_dir.is_dir():
            for log in sorted(runs_dir.glob("*/events.log")):
                paths[log.parent.name] = log
        for run_id, run_dir in self._extra_dirs.items():
            paths[run_id] = run_dir / "events.log"
        return paths

    def register_dir(self, run_dir: str | Path) -> RunHandle:
        run_dir = Path(run_dir)
        log = run_dir / "events.log"
        if not log.exists():
            raise FileNotFoundError(f"no events.log in {run_dir}")
        state = replay_log(log)
        run_id = state.run_id or run_dir.name
        self._extra_dirs[run_id] = run_dir
        handle = RunHandle(run_id=run_id, mode=RunMode.REPLAY, status=RunStatus.STOPPED)
        self._handles[run_id] = handle
        return handle

    def attach_runner(self, runner: LiveRunner) -> None:
        self._runners[runner.config.run_id] = runner
        self._handles[runner.config.run_id] = runner.handle

    def stop(self, run_id: str) -> RunHandle:
        handle = self.handle(run_id)
        runner = self._runners.get(run_id)
        if runner is not None:
            runner.stop()
        if handle.status in (RunStatus.WARMING_UP, RunStatus.RUNNING):
            handle.transition(RunStatus.STOPPED)
        return handle

    def handle(self, run_id: str) -> RunHandle:
        if run_id not in self.log_paths():
            raise KeyError(run_id)
        if run_id not in self._handles:
            self._handles[run_id] = RunHandle(run_id=run_id, mode=RunMode.REPLAY,
                                              status=RunStatus.STOPPED)
        return self._handles[run_id]

    def state(self, run_id: str) -> ArenaState:
        path = self.log_paths()[run_id]
        stat = path.stat()
        key = (str(path), stat.st_size, stat.st_mtime_ns)
        cached = self._cache.get(run_id)
        if cached is None or cached[0] != key:
            self._cache[run_id] = (key, replay_log(path))
        return self._cache[run_id][1]

    def version_token(self) -> str:
        h = hashlib.sha1()
        for run_id, path in sorted(self.log_paths().items()):
            stat = path.stat()
            h.update(f"{run_id}:{stat.st_size}:{stat.st_mtime_ns};".encode())
        return h.hexdigest()[:16]


def _parse_filter(request: Request) -> LeaderboardFilter:
    unknown = [k for k in request.query_params if k not in FILTER_PARAMS]
    if unknown:
        raise HTTPException(status_code=400,
                            detail=f"unknown query parameters: {', '.join(sorted(unknown))}")

    def axis(name: str) -> frozenset[str]:
        value = request.query_params.get(name, "")
        return frozenset(v for v in value.split(",") if v)

    return LeaderboardFilter(agents=axis("agents"), assets=axis("assets"),
                             models=axis("models"), strategies=axis("strategies"))


def _series_index(state: ArenaState) -> dict[tuple[str, str, str, str], object]:
    return {(s.framework, s.backbone, s.symbol, s.strategy): s
            for s in state.series.values()}


def create_app(data_root: str | Path) -> FastAPI:
    app = FastAPI(title="arena gateway")
    registry = RunRegistry(data_root)
    app.state.registry = registry

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/leaderboard")
    def get_leaderboard(request: Request):
        flt = _parse_filter(request)
        rows = []
        for run_id in sorted(registry.log_paths()):
            state = registry.state(run_id)
            index = _series_index(state)
            for row in (r for r in state.leaderboard_rows() if flt.matches(r)):
                s = row.snapshot
                series = index[(row.agent, row.backbone, row.asset, row.strategy)]
                live = [f for f in series.fills if f["phase"] == "live"]
                balance = 1.0
                cr_ex_fees = 1.0
                for f in live:
                    balance *= 1.0 + f["net_return"]
                    cr_ex_fees *= 1.0 + f["gross_return"]
                rows.append({
                    "run_id": run_id, "agent": row.agent, "backbone": row.backbone,
                    "asset": row.asset, "strategy": row.strategy,
                    "balance": balance, "cr": s.CR, "cr_ex_fees": cr_ex_fees - 1.0,
                    "ar": s.AR, "av": s.AV, "sr": s.SR, "mdd": s.MDD,
                    "win_rate": None, "as_of": s.as_of.isoformat(),
                })
        rows.sort(key=lambda r: (-r["cr"],
                                 -(r["sr"] if r["sr"] is not None else float("-inf")),
                                 r["agent"], r["backbone"], r["asset"], r["strategy"]))
        for i, r in enumerate(rows):
            r["rank"] = i + 1
        return {"version": registry.version_token(), "rows": rows}

    @app.get("/equity")
    def get_equity(request: Request):
        flt = _parse_filter(request)
        series_out = []
        for run_id in sorted(registry.log_paths()):
            state = registry.state(run_id)
            for key in sorted(state.series):
                s = state.series[key]
                probe_row = _probe(s)
                if not flt.matches(probe_row):
                    continue
                points = s.live_equity_points()
                if not points:
                    continue
                series_out.append({
                    "run_id": run_id,
                    "label": f"{s.framework}-{s.symbol}-{s.backbone or 'none'}",
                    "agent": s.framework, "backbone": s.backbone,
                    "asset": s.symbol, "strategy": s.strategy,
                    "points": [[d, e] for d, e in points],
                })
        return {"version": registry.version_token(), "series": series_out}

    @app.get("/runs")
    def get_runs():
        return {"version": registry.version_token(),
                "runs": [registry.handle(run_id).as_dict()
                         for run_id in sorted(registry.log_paths())]}

    @app.post("/runs/replay")
    def post_replay(body: dict):
        run_dir = body.get("run_dir")
        if not run_dir:
            raise HTTPException(status_code=400, detail="run_dir is required")
        try:
            handle = registry.register_dir(run_dir)
        except FileNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return handle.as_dict()

    @app.post("/runs/{run_id}/stop")
    def post_stop(run_id: str):
        try:
            return registry.stop(run_id).as_dict()
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown run {run_id}")

    return app


def _probe(series) -> SimpleNamespace:
    """Adapter so LeaderboardFilter.matches works on a series record."""
    return SimpleNamespace(agent=series.framework, backbone=series.backbone,
                           asset=series.symbol, strategy=series.strategy)
