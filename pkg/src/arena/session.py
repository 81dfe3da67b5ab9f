"""Session orchestration: the synchronous daily loop over a date range.

One session = a run configuration + a set of agents + a market store. Each
calendar date proceeds in a fixed order (prices, briefs, decisions, fills,
snapshot) and every step is emitted as an ArenaEvent, so the event log alone
reconstructs the whole run. Warm-up dates populate agent memory; their
decisions are logged but excluded from live metrics.

SessionEngine advances one date per tick; run_session drives it over the
whole calendar at once (replay / desk-scale runs), the live runner drives it
from a clock.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

import yaml

from .briefing import DailyBrief
from .ledger import FeeModel, PortfolioLedger
from .marketdata import (
    AssetClass,
    AssetId,
    FixtureConnector,
    PriceBar,
    TradingCalendar,
    calendar,
    dedupe_news,
    normalize_prices,
)
from .persistence import ArenaEvent, ArenaState, replay
from .protocol import (
    Agent,
    AgentSpec,
    AlwaysHoldAgent,
    BuyAndHoldAgent,
    DailyContext,
    DecisionRecord,
    Framework,
    GenericLLMAgent,
    ProtocolConfig,
    ScriptedAgent,
    TradeAction,
    VoteEnsembleAgent,
)
from .providers import RecordedProvider, StubProvider


@dataclass(frozen=True)
class RunConfig:
    run_id: str
    assets: tuple[AssetId, ...]
    live_start: dt.date
    end: dt.date
    start: dt.date | None = None  # warm-up start; default live_start - warmup_days
    holidays: tuple[dt.date, ...] = ()
    protocol: ProtocolConfig = ProtocolConfig()
    fee_bps: float = 0.0
    periods_per_year: Mapping[str, int] = field(
        default_factory=lambda: {"Equity": 252, "Crypto": 365})
    agent_specs: tuple[AgentSpec, ...] = ()
    source_priority: tuple[str, ...] = ()

    @property
    def warmup_start(self) -> dt.date:
        if self.start is not None:
            return self.start
        return self.live_start - dt.timedelta(days=self.protocol.warmup_days)

    def calendar_for(self, asset: AssetId) -> TradingCalendar:
        return calendar(asset.asset_class, self.warmup_start, self.end, self.holidays)

    def session_dates(self) -> list[dt.date]:
        dates: set[dt.date] = set()
        for asset in self.assets:
            dates.update(self.calendar_for(asset))
        return sorted(dates)


def load_run_config(path: str | Path) -> tuple[RunConfig, dict]:
    """Parse a run configuration file; returns (config, raw mapping).

    The raw mapping keeps artifact paths (prices, news, replies, scripts)
    for the caller to wire into a market store and agents.
    """
    raw = yaml.safe_load(Path(path).read_text())
    assets = tuple(AssetId(a["symbol"].upper(), AssetClass(a["asset_class"]))
                   for a in raw["assets"])
    proto_raw = dict(raw.get("protocol", {}))
    if "decision_time" in proto_raw and isinstance(proto_raw["decision_time"], str):
        proto_raw["decision_time"] = dt.time.fromisoformat(proto_raw["decision_time"])
    protocol = ProtocolConfig(**proto_raw)
    specs = tuple(parse_agent_spec(a) for a in raw.get("agents", ()))
    cfg = RunConfig(
        run_id=str(raw["run_id"]),
        assets=assets,
        start=_maybe_date(raw.get("start")),
        live_start=_maybe_date(raw["live_start"]),
        end=_maybe_date(raw["end"]),
        holidays=tuple(_maybe_date(h) for h in raw.get("holidays", ())),
        protocol=protocol,
        fee_bps=float(raw.get("fee_bps", 0.0)),
        periods_per_year=dict(raw.get("periods_per_year", {"Equity": 252, "Crypto": 365})),
        agent_specs=specs,
        source_priority=tuple(raw.get("source_priority", ())),
    )
    return cfg, raw


def _maybe_date(v) -> dt.date | None:
    if v is None or isinstance(v, dt.date):
        return v
    return dt.date.fromisoformat(str(v))


def parse_agent_spec(raw: Mapping) -> AgentSpec:
    params = dict(raw.get("params", {}))
    if "members" in raw:
        params["members"] = [parse_agent_spec(m) for m in raw["members"]]
    return AgentSpec(framework=Framework(raw["framework"]),
                     backbone=raw.get("backbone"), params=params)


def make_agent(spec: AgentSpec, cfg: ProtocolConfig,
               provider_factory: Callable[[AgentSpec], object] | None = None) -> Agent:
    """Instantiate the runtime for an agent spec.

    `provider_factory` supplies the text-completion provider for LLM agents
    (live client, recorded-reply store, or test stub).
    """
    if spec.framework is Framework.BUY_AND_HOLD:
        return BuyAndHoldAgent(spec)
    if spec.framework is Framework.ALWAYS_HOLD:
        return AlwaysHoldAgent(spec)
    if spec.framework is Framework.SCRIPTED:
        if "script_path" in spec.params:
            return ScriptedAgent.from_csv(spec, spec.params["script_path"])
        script = {dt.date.fromisoformat(d): TradeAction[a.upper()]
                  for d, a in spec.params.get("script", {}).items()}
        return ScriptedAgent(spec, script)
    if spec.framework is Framework.GENERIC_LLM:
        if provider_factory is None:
            raise ValueError(f"agent {spec.agent_id} needs a provider factory")
        return GenericLLMAgent(spec, provider_factory(spec), cfg)
    if spec.framework is Framework.VOTE_ENSEMBLE:
        members = [make_agent(m, cfg, provider_factory)
                   for m in spec.params["members"]]
        return VoteEnsembleAgent(spec, members)
    raise ValueError(f"unknown framework {spec.framework!r}")


def provider_factory_for(raw_config: Mapping, config_dir: Path) -> Callable[[AgentSpec], object]:
    """Default factory: recorded replies when a store is configured, else a
    stub that always holds (keeps desk-scale runs provider-free)."""
    replies = raw_config.get("replies")
    if replies:
        root = Path(replies) if Path(replies).is_absolute() else config_dir / replies

        def factory(spec: AgentSpec):
            return RecordedProvider(root)
    else:
        def factory(spec: AgentSpec):
            return StubProvider("[Decision]: Hold")
    return factory


class MarketStore:
    """Per-run view of normalized prices and verified briefs.

    Single-writer: replay runs populate it up front, live runs add each
    day's data before the tick.
    """

    def __init__(self, bars: Sequence[PriceBar] = (),
                 briefs: Sequence[DailyBrief] = ()):
        self._bars: dict[tuple[str, dt.date], PriceBar] = {}
        self._briefs: dict[tuple[str, dt.date], DailyBrief] = {}
        self.add_bars(bars)
        self.add_briefs(briefs)

    def add_bars(self, bars: Sequence[PriceBar]) -> None:
        for b in bars:
            key = (b.asset.symbol, b.date)
            if key in self._bars and self._bars[key] != b:
                raise ValueError(f"conflicting bar for {key}; normalize the batch first")
            self._bars[key] = b

    def add_briefs(self, briefs: Sequence[DailyBrief]) -> None:
        for br in briefs:
            self._briefs[(br.asset.symbol, br.date)] = br

    def price(self, symbol: str, date: dt.date) -> PriceBar | None:
        return self._bars.get((symbol, date))

    def brief(self, symbol: str, date: dt.date) -> DailyBrief | None:
        return self._briefs.get((symbol, date))

    def history(self, symbol: str, before: dt.date, limit: int) -> tuple[PriceBar, ...]:
        bars = sorted((b for (s, d), b in self._bars.items()
                       if s == symbol and d < before), key=lambda b: b.date)
        return tuple(bars[-limit:])

    @classmethod
    def from_fixtures(cls, config: RunConfig, price_path: str | Path,
                      news_path: str | Path | None = None,
                      summarizer=None) -> "MarketStore":
        from .briefing import summarize_day

        classes = {a.symbol: a.asset_class for a in config.assets}
        connector = FixtureConnector(price_path, news_path, classes)
        raws = []
        briefs = []
        for asset in config.assets:
            raws.extend(connector.fetch_prices(asset, config.warmup_start, config.end))
            if news_path is not None and summarizer is not None:
                items = dedupe_news(connector.fetch_news(asset, config.warmup_start, config.end))
                by_date: dict[dt.date, list] = {}
                for n in items:
                    by_date.setdefault(n.published.date(), []).append(n)
                for date, day_items in sorted(by_date.items()):
                    briefs.append(summarize_day(asset, date, day_items, summarizer,
                                                config.protocol.temperature,
                                                config.protocol.retry_limit))
        bars = normalize_prices(raws, classes, config.source_priority)
        return cls(bars, briefs)


class SessionEngine:
    """Advances a session one calendar date at a time, emitting events."""

    def __init__(self, config: RunConfig, agents: Sequence[Agent],
                 market: MarketStore,
                 sink: Callable[[ArenaEvent], None] | None = None):
        self.config = config
        self.agents = list(agents)
        self.market = market
        self.sink = sink
        self.events: list[ArenaEvent] = []
        self._seq = 0
        self._calendars = {a.symbol: set(config.calendar_for(a)) for a in config.assets}
        self._ledgers = {
            (ag.spec.agent_id, a.symbol):
                PortfolioLedger(ag.spec.agent_id, a.symbol, FeeModel(config.fee_bps))
            for ag in self.agents for a in config.assets}
        self._memories: dict[tuple[str, str], list[DecisionRecord]] = {
            k: [] for k in self._ledgers}
        self._pending: dict[tuple[str, str], DecisionRecord] = {}
        self._prev_price: dict[str, PriceBar] = {}

    def _emit(self, date: dt.date, kind: str, payload: dict) -> None:
        self._seq += 1
        event = ArenaEvent(seq=self._seq, run_id=self.config.run_id, date=date,
                           kind=kind, payload=payload)
        self.events.append(event)
        if self.sink is not None:
            self.sink(event)

    def tick(self, date: dt.date) -> None:
        """One protocol day: prices, briefs, decisions, fills, snapshot."""
        config = self.config
        phase = "warmup" if date < config.live_start else "live"

        active: list[AssetId] = []
        for asset in config.assets:
            if date not in self._calendars[asset.symbol]:
                continue
            bar = self.market.price(asset.symbol, date)
            if bar is None:
                self._emit(date, "GapNoted", {"symbol": asset.symbol,
                                              "reason": "missing price",
                                              "phase": phase})
                continue
            active.append(asset)
            self._emit(date, "PriceObserved", {"symbol": asset.symbol,
                                               "asset_class": asset.asset_class.value,
                                               "close": bar.close,
                                               "source": bar.source})

        briefs: dict[str, DailyBrief | None] = {}
        for asset in active:
            brief = self.market.brief(asset.symbol, date)
            briefs[asset.symbol] = brief
            if brief is not None:
                self._emit(date, "BriefPublished", {
                    "symbol": asset.symbol, "summary": brief.summary,
                    "sentiment": brief.sentiment_label,
                    "themes": list(brief.themes),
                    "source_item_ids": list(brief.source_item_ids),
                    "available": brief.available})

        decisions_today: dict[tuple[str, str], DecisionRecord] = {}
        for asset in active:
            history = self.market.history(asset.symbol, date,
                                          config.protocol.memory_size)
            for agent in self.agents:
                key = (agent.spec.agent_id, asset.symbol)
                ctx = DailyContext(
                    asset=asset, date=date, price_history=history,
                    brief=briefs[asset.symbol],
                    recent_actions=tuple(self._memories[key][-config.protocol.memory_size:]),
                    run_id=config.run_id, phase=phase)
                self._emit(date, "DecisionRequested", {
                    "agent": agent.spec.agent_id,
                    "framework": agent.spec.framework.value,
                    "backbone": agent.spec.backbone or "",
                    "strategy": agent.spec.strategy,
                    "symbol": asset.symbol, "phase": phase})
                record = agent.decide(ctx)
                decisions_today[key] = record
                self._memories[key].append(record)
                self._emit(date, "DecisionMade", {
                    "agent": agent.spec.agent_id, "symbol": asset.symbol,
                    "action": record.action.name, "signal": record.action.signal,
                    "attempts": record.attempts, "raw_reply": record.raw_reply,
                    "failed": record.failed, "phase": phase})
                if record.failed:
                    self._emit(date, "FailureNoted", {
                        "agent": agent.spec.agent_id, "symbol": asset.symbol,
                        "reason": "decision parse retries exhausted; HOLD substituted",
                        "phase": phase})

        # Fills: the previously pending decision realized over the
        # close-to-close period ending at today's price.
        for asset in active:
            bar = self.market.price(asset.symbol, date)
            prev = self._prev_price.get(asset.symbol)
            if prev is not None:
                for agent in self.agents:
                    key = (agent.spec.agent_id, asset.symbol)
                    decision = self._pending.get(key)
                    if decision is None:
                        continue
                    rec = self._ledgers[key].fill(date, decision.action.signal,
                                                  prev.close, bar.close)
                    self._emit(date, "FillApplied", {
                        "agent": agent.spec.agent_id,
                        "framework": agent.spec.framework.value,
                        "backbone": agent.spec.backbone or "",
                        "strategy": agent.spec.strategy,
                        "symbol": asset.symbol,
                        "signal": rec.signal,
                        "prev_close": prev.close, "close": bar.close,
                        "gross_return": rec.gross_return,
                        "net_return": rec.net_return,
                        "equity": rec.equity, "phase": phase})
            self._prev_price[asset.symbol] = bar

        for key, record in decisions_today.items():
            self._pending[key] = record

        if phase == "live" and active:
            self._emit(date, "SnapshotEmitted", {"as_of": date.isoformat()})


def run_session(config: RunConfig, agents: Sequence[Agent], market: MarketStore,
                sink: Callable[[ArenaEvent], None] | None = None) -> list[ArenaEvent]:
    """Execute the full warm-up + live session, returning the event list.

    Events come out in deterministic order: date, then the fixed per-date
    kind order, then config order for assets and agents.
    """
    engine = SessionEngine(config, agents, market, sink=sink)
    for date in config.session_dates():
        engine.tick(date)
    return engine.events


def run_session_to_state(config: RunConfig, agents: Sequence[Agent],
                         market: MarketStore,
                         sink: Callable[[ArenaEvent], None] | None = None) -> ArenaState:
    """Run a session and fold its own events into state.

    Live runs and replays share this single fold, which is what makes their
    exports byte-identical.
    """
    return replay(run_session(config, agents, market, sink=sink))
