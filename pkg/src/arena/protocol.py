"""The daily decision protocol: identical inputs, {BUY, SELL, HOLD} outputs.

Every agent sees the same market fields for a given asset-day (price history,
verified brief) and emits one action, mapped bijectively to the position
signal {+1, -1, 0}. LLM-backed agents go through a structured decision prompt
with a bounded retry loop around reply parsing; the majority-vote ensemble
aggregates member actions with ties resolved to HOLD.
"""

from __future__ import annotations

import csv
import datetime as dt
import re
import time
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence

from .briefing import DailyBrief
from .marketdata import AssetId, PriceBar
from .providers import ProviderError, TextCompletionProvider


class TradeAction(Enum):
    BUY = 1
    SELL = -1
    HOLD = 0

    @property
    def signal(self) -> int:
        return self.value

    @classmethod
    def from_signal(cls, signal: int) -> "TradeAction":
        return cls(signal)


class ParseError(ValueError):
    """Reply did not contain a well-formed decision line."""


@dataclass(frozen=True)
class ProtocolConfig:
    temperature: float = 0.5
    retry_limit: int = 3
    warmup_days: int = 90
    memory_size: int = 7
    decision_time: dt.time = dt.time(16, 0)  # UTC

    def __post_init__(self):
        if self.retry_limit < 0:
            raise ValueError("retry_limit must be >= 0")
        if self.memory_size < 1:
            raise ValueError("memory_size must be >= 1")


class Framework(str, Enum):
    BUY_AND_HOLD = "BuyAndHold"
    ALWAYS_HOLD = "AlwaysHold"
    SCRIPTED = "Scripted"
    GENERIC_LLM = "GenericLLM"
    VOTE_ENSEMBLE = "VoteEnsemble"


@dataclass(frozen=True)
class AgentSpec:
    framework: Framework
    backbone: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.framework is Framework.GENERIC_LLM and not self.backbone:
            raise ValueError("GenericLLM agents require a backbone model id")
        if self.framework is Framework.VOTE_ENSEMBLE and not self.params.get("members"):
            raise ValueError("VoteEnsemble agents require at least one member spec")

    @property
    def strategy(self) -> str:
        return self.params.get("strategy", "baseline")

    @property
    def agent_id(self) -> str:
        parts = [self.framework.value]
        if self.backbone:
            parts.append(self.backbone)
        if self.strategy != "baseline":
            parts.append(self.strategy)
        return "-".join(parts)


@dataclass(frozen=True)
class DailyContext:
    asset: AssetId
    date: dt.date
    price_history: tuple[PriceBar, ...]  # last K completed bars before `date`
    brief: DailyBrief | None
    recent_actions: tuple["DecisionRecord", ...]
    run_id: str = ""
    phase: str = "live"  # "warmup" or "live"

    def __post_init__(self):
        if any(b.date >= self.date for b in self.price_history):
            raise ValueError("price history must predate the decision date")
        if any(b2.date <= b1.date for b1, b2 in
               zip(self.price_history, self.price_history[1:])):
            raise ValueError("price history must be strictly date-increasing")

    def market_fields(self) -> tuple:
        """The fields that must be bit-identical across agents on one day."""
        return (self.asset, self.date, self.price_history, self.brief,
                self.run_id, self.phase)


@dataclass(frozen=True)
class DecisionRecord:
    agent: AgentSpec
    asset: AssetId
    date: dt.date
    action: TradeAction
    attempts: int = 1
    raw_reply: str | None = None
    latency: float = 0.0
    failed: bool = False  # all parse attempts exhausted; HOLD substituted


DECISION_SYSTEM_PROMPT = """\
You are a professional financial decision-making agent specialized in quantitative and fundamental reasoning with a daily trading frequency.
Your primary task is to analyze the reasoning outputs of other agent roles and integrate their insights into a unified, evidence-based conclusion.

Based on your analysis and the provided definitions, determine the most appropriate trading decision for the target asset [ASSET] given its current market price [PRICES] and contextual signals.

Your possible actions are defined as follows:

- Buy: Indicates a bullish outlook or perceived undervaluation, suggesting the asset price is likely to rise. And you choose to be in long position.

- Sell: Indicates a bearish outlook or perceived overvaluation, suggesting the asset price is likely to fall. And you choose to be in short position.

- Hold: Indicates market uncertainty or equilibrium, suggesting no immediate trading action. And you choose to go flat position.

Return your final output strictly in the following format:

[Decision]: Buy / Sell / Hold
"""

NO_BRIEF_MARKER = "no verified news available"


def format_price_history(bars: Sequence[PriceBar]) -> str:
    if not bars:
        return "(no completed price history yet)"
    return "\n".join(f"{b.date.isoformat()}: close {b.close}" for b in bars)


def build_decision_prompt(ctx: DailyContext) -> str:
    """Render the full daily decision prompt for one agent-asset-day."""
    prices_block = format_price_history(ctx.price_history)
    text = (DECISION_SYSTEM_PROMPT
            .replace("[ASSET]", ctx.asset.symbol)
            .replace("[PRICES]", "listed below"))
    parts = [text,
             f"Recent daily closing prices for {ctx.asset.symbol}:",
             prices_block]
    if ctx.brief is not None and ctx.brief.available and ctx.brief.summary:
        parts += [f"Verified news summary for {ctx.date.isoformat()}:",
                  ctx.brief.summary]
    else:
        parts.append(f"({NO_BRIEF_MARKER} for {ctx.date.isoformat()})")
    if ctx.recent_actions:
        acts = ", ".join(r.action.name for r in ctx.recent_actions)
        parts.append(f"Your most recent actions (oldest first): {acts}")
    return "\n\n".join(parts)


_DECISION_RE = re.compile(r"^\s*\[decision\]\s*:\s*([A-Za-z]+)\s*[.!,;:]*\s*$",
                          re.IGNORECASE)
_WORD_MAP = {"buy": TradeAction.BUY, "sell": TradeAction.SELL, "hold": TradeAction.HOLD}


def parse_decision(reply: str) -> TradeAction:
    """Map the last well-formed `[Decision]: <word>` line to an action."""
    action = None
    for line in reply.splitlines():
        m = _DECISION_RE.match(line)
        if m:
            word = m.group(1).lower()
            if word in _WORD_MAP:
                action = _WORD_MAP[word]
    if action is None:
        raise ParseError(f"no decision line found in reply: {reply!r:.120}")
    return action


def decide_with_retry(agent: AgentSpec, ctx: DailyContext,
                      provider: TextCompletionProvider,
                      cfg: ProtocolConfig) -> DecisionRecord:
    """Call the provider until a reply parses, up to 1 + retry_limit attempts.

    Exhaustion substitutes HOLD with the failure flag set, so the day stays
    accountable but visibly degraded.
    """
    prompt = build_decision_prompt(ctx)
    started = time.monotonic()
    attempts = 0
    last_reply: str | None = None
    while attempts <= cfg.retry_limit:
        attempts += 1
        try:
            last_reply = provider.complete(prompt, "", cfg.temperature)
            action = parse_decision(last_reply)
        except (ParseError, ProviderError):
            continue
        return DecisionRecord(agent=agent, asset=ctx.asset, date=ctx.date,
                              action=action, attempts=attempts,
                              raw_reply=last_reply,
                              latency=time.monotonic() - started)
    return DecisionRecord(agent=agent, asset=ctx.asset, date=ctx.date,
                          action=TradeAction.HOLD, attempts=attempts,
                          raw_reply=last_reply,
                          latency=time.monotonic() - started, failed=True)


def majority_vote(actions: Sequence[TradeAction]) -> TradeAction:
    """Action with the strictly greatest count; any tie for the top is HOLD."""
    if not actions:
        raise ValueError("majority_vote needs at least one action")
    counts = Counter(actions)
    top = max(counts.values())
    winners = [a for a, c in counts.items() if c == top]
    return winners[0] if len(winners) == 1 else TradeAction.HOLD


# --- Agents ------------------------------------------------------------------

class Agent:
    """Protocol-side adapter: one decision per context."""

    spec: AgentSpec

    def decide(self, ctx: DailyContext) -> DecisionRecord:
        raise NotImplementedError


class BuyAndHoldAgent(Agent):
    def __init__(self, spec: AgentSpec | None = None):
        self.spec = spec or AgentSpec(Framework.BUY_AND_HOLD)

    def decide(self, ctx: DailyContext) -> DecisionRecord:
        return DecisionRecord(agent=self.spec, asset=ctx.asset, date=ctx.date,
                              action=TradeAction.BUY)


class AlwaysHoldAgent(Agent):
    def __init__(self, spec: AgentSpec | None = None):
        self.spec = spec or AgentSpec(Framework.ALWAYS_HOLD)

    def decide(self, ctx: DailyContext) -> DecisionRecord:
        return DecisionRecord(agent=self.spec, asset=ctx.asset, date=ctx.date,
                              action=TradeAction.HOLD)


class ScriptedAgent(Agent):
    """Plays a fixed date -> action script; unscripted dates are HOLD."""

    def __init__(self, spec: AgentSpec, script: dict[dt.date, TradeAction]):
        self.spec = spec
        self.script = dict(script)

    @classmethod
    def from_csv(cls, spec: AgentSpec, path: str | Path) -> "ScriptedAgent":
        script = {}
        with open(path, newline="") as f:
            for rec in csv.DictReader(f):
                script[dt.date.fromisoformat(rec["date"])] = TradeAction[rec["action"].upper()]
        return cls(spec, script)

    def decide(self, ctx: DailyContext) -> DecisionRecord:
        action = self.script.get(ctx.date, TradeAction.HOLD)
        return DecisionRecord(agent=self.spec, asset=ctx.asset, date=ctx.date,
                              action=action)


class GenericLLMAgent(Agent):
    def __init__(self, spec: AgentSpec, provider: TextCompletionProvider,
                 cfg: ProtocolConfig):
        self.spec = spec
        self.provider = provider
        self.cfg = cfg

    def decide(self, ctx: DailyContext) -> DecisionRecord:
        provider = self.provider
        # Recorded providers replay per (agent, asset, date); re-scope each call.
        scope = getattr(provider, "scope", None)
        if scope is not None:
            provider = scope(self.spec.agent_id, ctx.asset.symbol, ctx.date)
        return decide_with_retry(self.spec, ctx, provider, self.cfg)


class VoteEnsembleAgent(Agent):
    """Meta-agent emitting the majority action of its members on the same context."""

    def __init__(self, spec: AgentSpec, members: Sequence[Agent]):
        if not members:
            raise ValueError("vote ensemble needs at least one member")
        self.spec = spec
        self.members = list(members)

    def decide(self, ctx: DailyContext) -> DecisionRecord:
        records = [m.decide(ctx) for m in self.members]
        action = majority_vote([r.action for r in records])
        return DecisionRecord(agent=self.spec, asset=ctx.asset, date=ctx.date,
                              action=action,
                              attempts=sum(r.attempts for r in records))
