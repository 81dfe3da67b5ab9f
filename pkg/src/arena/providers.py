"""Pluggable text-completion providers.

Both the news summarizer and the LLM decision agents talk to a provider
through the same minimal contract: (system prompt, user content, temperature)
in, text out. Live runs plug in a real vendor client; replay runs use
RecordedProvider so a session is reproducible byte-for-byte without network
access.
"""

from __future__ import annotations

import datetime as dt
from pathlib import Path
from typing import Protocol


class ProviderError(RuntimeError):
    """Provider could not produce a reply (outage, missing recording, ...)."""


class TextCompletionProvider(Protocol):
    def complete(self, system: str, user: str, temperature: float) -> str: ...


class StubProvider:
    """Fixed or scripted replies, with call counting for protocol tests."""

    def __init__(self, replies):
        if isinstance(replies, str):
            self._replies = None
            self._fixed = replies
        else:
            self._replies = list(replies)
            self._fixed = None
        self.calls = 0
        self.requests: list[tuple[str, str, float]] = []

    def complete(self, system: str, user: str, temperature: float) -> str:
        self.requests.append((system, user, temperature))
        self.calls += 1
        if self._fixed is not None:
            return self._fixed
        if not self._replies:
            raise ProviderError("stub exhausted")
        return self._replies.pop(0)


def reply_path(root: str | Path, agent: str, symbol: str, date: dt.date, attempt: int) -> Path:
    """Recorded-replies store layout: one text file per (agent, asset, date, attempt)."""
    safe_agent = agent.replace("/", "_").replace(":", "_")
    return Path(root) / safe_agent / symbol / f"{date.isoformat()}.{attempt}.txt"


class RecordedProvider:
    """Replays recorded replies from the on-disk store.

    The caller scopes it to one (agent, asset, date) before each decision;
    successive complete() calls walk the attempt files in order.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._agent = ""
        self._symbol = ""
        self._date: dt.date | None = None
        self._attempt = 0

    def scope(self, agent: str, symbol: str, date: dt.date) -> "RecordedProvider":
        self._agent, self._symbol, self._date = agent, symbol, date
        self._attempt = 0
        return self

    def complete(self, system: str, user: str, temperature: float) -> str:
        assert self._date is not None, "RecordedProvider used without scope()"
        self._attempt += 1
        path = reply_path(self.root, self._agent, self._symbol, self._date, self._attempt)
        if not path.exists():
            raise ProviderError(f"no recorded reply at {path}")
        return path.read_text()


def record_reply(root: str | Path, agent: str, symbol: str, date: dt.date,
                 attempt: int, text: str) -> None:
    path = reply_path(root, agent, symbol, date, attempt)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
