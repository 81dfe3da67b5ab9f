"""Market data acquisition and normalization.

Prices and news arrive from heterogeneous sources (fixture files in replay,
HTTP feeds in live mode). This module canonicalizes them into PriceBar /
NewsItem records, resolves duplicates deterministically, and provides the
per-asset-class trading calendars the session engine iterates over.
"""

from __future__ import annotations

import csv
import datetime as dt
import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class AssetClass(str, Enum):
    EQUITY = "Equity"
    CRYPTO = "Crypto"


class ValidationError(ValueError):
    """Raised when a source record violates a data invariant."""


@dataclass(frozen=True, order=True)
class AssetId:
    symbol: str
    asset_class: AssetClass

    def __post_init__(self):
        if not self.symbol:
            raise ValidationError("asset symbol must be non-empty")
        if self.symbol != self.symbol.upper():
            raise ValidationError(f"asset symbol must be upper-case: {self.symbol!r}")


@dataclass(frozen=True)
class PriceBar:
    asset: AssetId
    date: dt.date
    close: float
    source: str = ""

    def __post_init__(self):
        if not (self.close > 0 and self.close == self.close and self.close != float("inf")):
            raise ValidationError(
                f"non-positive or non-finite close {self.close!r} for "
                f"{self.asset.symbol} on {self.date} from source {self.source!r}"
            )


def news_id(url: str, title: str, body: str) -> str:
    """Deterministic content identity for a news record, keyed on (url, title, body)."""
    h = hashlib.sha256()
    for part in (url, title, body):
        h.update(part.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class NewsItem:
    id: str
    asset: AssetId
    published: dt.datetime
    title: str
    body: str
    source: str = ""
    url: str = ""

    @classmethod
    def create(cls, asset: AssetId, published: dt.datetime, title: str, body: str,
               source: str = "", url: str = "") -> "NewsItem":
        return cls(id=news_id(url, title, body), asset=asset, published=published,
                   title=title, body=body, source=source, url=url)


@dataclass(frozen=True)
class TradingCalendar:
    asset_class: AssetClass
    dates: tuple[dt.date, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.dates, self.dates[1:])):
            raise ValidationError("calendar dates must be strictly increasing")

    def __len__(self) -> int:
        return len(self.dates)

    def __iter__(self):
        return iter(self.dates)

    def __contains__(self, d: dt.date) -> bool:
        return d in set(self.dates)


def calendar(asset_class: AssetClass, start: dt.date, end: dt.date,
             holidays: Iterable[dt.date] = ()) -> TradingCalendar:
    """Trading dates in [start, end] inclusive.

    Crypto trades every calendar day; equities trade weekdays minus the
    configured holiday set.
    """
    if start > end:
        raise ValueError(f"start {start} is after end {end}")
    holiday_set = set(holidays)
    dates = []
    d = start
    one = dt.timedelta(days=1)
    while d <= end:
        if asset_class is AssetClass.CRYPTO:
            dates.append(d)
        elif d.weekday() < 5 and d not in holiday_set:
            dates.append(d)
        d += one
    return TradingCalendar(asset_class=asset_class, dates=tuple(dates))


# --- Normalization -----------------------------------------------------------

def normalize_price(raw: Mapping, asset_class: AssetClass) -> PriceBar:
    """Canonicalize one source-specific price record.

    Accepts the loose field names the reference connectors produce
    (sym/symbol, date as ISO string or date, close numeric).
    """
    symbol = str(raw.get("symbol") or raw.get("sym") or "").upper()
    date = raw.get("date")
    if isinstance(date, str):
        date = dt.date.fromisoformat(date)
    try:
        close = float(raw["close"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad close in record from {raw.get('source', '?')!r}: {exc}")
    return PriceBar(asset=AssetId(symbol, asset_class), date=date, close=close,
                    source=str(raw.get("source") or raw.get("src") or ""))


def normalize_prices(raws: Iterable[Mapping], asset_classes: Mapping[str, AssetClass],
                     source_priority: Sequence[str] = ()) -> list[PriceBar]:
    """Normalize a batch and resolve (asset, date) duplicates.

    Duplicates keep the record from the highest-priority source; sources not
    in the priority list rank below all listed ones, ties broken by source
    name for determinism.
    """
    rank = {s: i for i, s in enumerate(source_priority)}

    def priority(bar: PriceBar):
        return (rank.get(bar.source, len(rank)), bar.source)

    best: dict[tuple[AssetId, dt.date], PriceBar] = {}
    for raw in raws:
        symbol = str(raw.get("symbol") or raw.get("sym") or "").upper()
        bar = normalize_price(raw, asset_classes[symbol])
        key = (bar.asset, bar.date)
        if key not in best or priority(bar) < priority(best[key]):
            best[key] = bar
    return sorted(best.values(), key=lambda b: (b.asset.symbol, b.date))


def dedupe_news(items: Sequence[NewsItem]) -> list[NewsItem]:
    """Unique-by-id, first occurrence wins, output ordered by (published, id)."""
    seen: dict[str, NewsItem] = {}
    for item in items:
        if item.id not in seen:
            seen[item.id] = item
    return sorted(seen.values(), key=lambda n: (n.published, n.id))


# --- Connectors --------------------------------------------------------------

PRICE_CSV_HEADER = ["symbol", "date", "close", "source"]
NEWS_FIELDS = ["id", "symbol", "published", "title", "body", "source", "url"]


def load_price_csv(path: str | Path) -> list[dict]:
    """Raw price records from the CSV fixture format `symbol,date,close,source`."""
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def write_price_csv(path: str | Path, bars: Iterable[PriceBar]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(PRICE_CSV_HEADER)
        for b in bars:
            w.writerow([b.asset.symbol, b.date.isoformat(), repr(b.close), b.source])


def load_news_jsonl(path: str | Path, asset_classes: Mapping[str, AssetClass]) -> list[NewsItem]:
    """News records from the line-delimited fixture format.

    The stored id is recomputed from content; a mismatch is a validation error.
    """
    items = []
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            symbol = rec["symbol"].upper()
            item = NewsItem.create(
                asset=AssetId(symbol, asset_classes[symbol]),
                published=dt.datetime.fromisoformat(rec["published"]),
                title=rec["title"], body=rec["body"],
                source=rec.get("source", ""), url=rec.get("url", ""),
            )
            if rec.get("id") and rec["id"] != item.id:
                raise ValidationError(f"{path}:{lineno}: stored news id {rec['id']} "
                                      f"does not match content hash {item.id}")
            items.append(item)
    return items


def write_news_jsonl(path: str | Path, items: Iterable[NewsItem]) -> None:
    with open(path, "w") as f:
        for n in items:
            rec = {"id": n.id, "symbol": n.asset.symbol,
                   "published": n.published.isoformat(), "title": n.title,
                   "body": n.body, "source": n.source, "url": n.url}
            f.write(json.dumps(rec, sort_keys=True) + "\n")


class FixtureConnector:
    """Replay connector reading the price CSV and news JSONL fixture formats."""

    def __init__(self, price_path: str | Path | None, news_path: str | Path | None,
                 asset_classes: Mapping[str, AssetClass]):
        self.price_path = price_path
        self.news_path = news_path
        self.asset_classes = dict(asset_classes)

    def fetch_prices(self, asset: AssetId, start: dt.date, end: dt.date) -> list[dict]:
        if self.price_path is None:
            return []
        out = []
        for rec in load_price_csv(self.price_path):
            if rec["symbol"].upper() != asset.symbol:
                continue
            d = dt.date.fromisoformat(rec["date"])
            if start <= d <= end:
                out.append(rec)
        return out

    def fetch_news(self, asset: AssetId, start: dt.date, end: dt.date) -> list[NewsItem]:
        if self.news_path is None:
            return []
        return [n for n in load_news_jsonl(self.news_path, self.asset_classes)
                if n.asset == asset and start <= n.published.date() <= end]


class HttpFeedConnector:
    """Generic live connector for a JSON feed.

    Expects GET `{base_url}/prices?symbol=&start=&end=` returning a list of
    raw price records and `{base_url}/news?...` returning a list of news
    records in the JSONL field layout.
    """

    def __init__(self, base_url: str, asset_classes: Mapping[str, AssetClass],
                 source: str = "http", client=None):
        import httpx

        self.base_url = base_url.rstrip("/")
        self.asset_classes = dict(asset_classes)
        self.source = source
        self._client = client or httpx.Client(timeout=30)

    def _get(self, path: str, **params) -> list:
        resp = self._client.get(self.base_url + path, params=params)
        resp.raise_for_status()
        return resp.json()

    def fetch_prices(self, asset: AssetId, start: dt.date, end: dt.date) -> list[dict]:
        recs = self._get("/prices", symbol=asset.symbol,
                         start=start.isoformat(), end=end.isoformat())
        for r in recs:
            r.setdefault("source", self.source)
        return recs

    def fetch_news(self, asset: AssetId, start: dt.date, end: dt.date) -> list[NewsItem]:
        items = []
        for rec in self._get("/news", symbol=asset.symbol,
                             start=start.isoformat(), end=end.isoformat()):
            items.append(NewsItem.create(
                asset=asset,
                published=dt.datetime.fromisoformat(rec["published"]),
                title=rec.get("title", ""), body=rec.get("body", ""),
                source=rec.get("source", self.source), url=rec.get("url", ""),
            ))
        return items
