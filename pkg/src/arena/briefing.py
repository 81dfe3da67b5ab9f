"""Daily news briefs: summarization prompt, brief production, quality control.

A brief is the single verified per-asset per-day news summary every agent
sees. Summarization goes through a pluggable text-completion provider; the
reply is stored verbatim in the event log so replay never re-calls a model.
Quality control scores briefs on a four-criterion 0/1/2 rubric and reports
exact-match inter-annotator agreement.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .marketdata import AssetId, NewsItem
from .providers import ProviderError, TextCompletionProvider

SENTIMENT_LABELS = ("Bullish", "Neutral", "Bearish")

QC_CRITERIA = ("date_accuracy", "coverage", "bias_awareness", "source_diversity")

SUMMARY_PROMPT_TEMPLATE = """\
Task: Analyze the provided {symbol} news articles from {date_str} and produce a clear, comprehensive, and well-structured summary.

Instructions:
- Use only the provided articles for your analysis.
- Do not retrieve or reference any external information.
- Refrain from including current prices or speculative forecasts.
- Focus strictly on the events, sentiment, and contextual details presented in the articles.
- Do not mention or enumerate article IDs in the output.

Articles from {date_str}:

{articles_text}

Output Requirements:
1. Provide a cohesive summary highlighting the key developments for {symbol}.
2. Identify major themes or emerging narratives within the content.
3. Assess and articulate the overall market sentiment reflected in the articles.
4. End your response with one line of the form "Sentiment: Bullish" / "Sentiment: Neutral" / "Sentiment: Bearish".

Compose your response as a coherent and polished narrative that maintains logical flow and clarity throughout.
"""

NO_NEWS_PROMPT_TEMPLATE = """\
Task: There are no verified {symbol} news articles available for {date_str}.

Instructions:
- Do not retrieve or reference any external information.
- State plainly that no material news was available for {symbol} on {date_str}.
- End your response with the line "Sentiment: Neutral".
"""


@dataclass(frozen=True)
class DailyBrief:
    asset: AssetId
    date: dt.date
    summary: str
    themes: tuple[str, ...] = ()
    sentiment_label: str = "Neutral"
    source_item_ids: tuple[str, ...] = ()
    available: bool = True

    def __post_init__(self):
        if self.summary and not self.source_item_ids:
            raise ValueError("a non-empty brief must cite its source items")


def build_summary_prompt(symbol: str, date: dt.date, articles: Sequence[NewsItem]) -> str:
    """Render the summarization prompt for one asset-day.

    An empty article list yields the distinguished no-news variant.
    """
    date_str = date.isoformat()
    if not articles:
        return NO_NEWS_PROMPT_TEMPLATE.format(symbol=symbol, date_str=date_str)
    blocks = []
    for item in articles:
        blocks.append(f"Title: {item.title}\n{item.body}")
    return SUMMARY_PROMPT_TEMPLATE.format(
        symbol=symbol, date_str=date_str, articles_text="\n\n".join(blocks))


_SENTIMENT_RE = re.compile(r"^\s*Sentiment:\s*(Bullish|Neutral|Bearish)\b",
                           re.IGNORECASE | re.MULTILINE)
_THEMES_RE = re.compile(r"^\s*Themes:\s*(.+)$", re.IGNORECASE | re.MULTILINE)


def extract_sentiment(reply: str) -> str:
    """Last explicit sentiment label line; absence means Neutral."""
    matches = _SENTIMENT_RE.findall(reply)
    return matches[-1].capitalize() if matches else "Neutral"


def extract_themes(reply: str) -> tuple[str, ...]:
    m = _THEMES_RE.search(reply)
    if not m:
        return ()
    return tuple(t.strip() for t in m.group(1).split(",") if t.strip())


def summarize_day(asset: AssetId, date: dt.date, articles: Sequence[NewsItem],
                  summarizer: TextCompletionProvider, temperature: float = 0.5,
                  retry_limit: int = 3) -> DailyBrief:
    """Produce the verified daily brief for one asset-day.

    Provider failure after retries yields an unavailable brief; downstream
    code must then present a no-brief context, never a stale brief.
    """
    articles = list(articles)
    if not articles:
        return DailyBrief(asset=asset, date=date, summary="", themes=(),
                          sentiment_label="Neutral", source_item_ids=(),
                          available=True)
    prompt = build_summary_prompt(asset.symbol, date, articles)
    reply = None
    for _ in range(1 + retry_limit):
        try:
            reply = summarizer.complete("", prompt, temperature)
            break
        except ProviderError:
            continue
    if reply is None:
        return DailyBrief(asset=asset, date=date, summary="", available=False,
                          source_item_ids=tuple(a.id for a in articles))
    return DailyBrief(
        asset=asset, date=date, summary=reply,
        themes=extract_themes(reply),
        sentiment_label=extract_sentiment(reply),
        source_item_ids=tuple(a.id for a in articles),
    )


# --- Quality control ---------------------------------------------------------

@dataclass(frozen=True)
class QualityScore:
    brief_ref: tuple[str, dt.date]  # (symbol, date)
    date_accuracy: int
    coverage: int
    bias_awareness: int
    source_diversity: int
    annotator: str = ""

    def __post_init__(self):
        for crit in QC_CRITERIA:
            level = getattr(self, crit)
            if level not in (0, 1, 2):
                raise ValueError(f"{crit} level must be 0, 1 or 2, got {level!r}")

    def level(self, criterion: str) -> int:
        return getattr(self, criterion)


@dataclass(frozen=True)
class AgreementReport:
    per_criterion_agreement: dict[str, float]
    n_items: int


def score_brief(scores: Sequence[QualityScore]) -> dict[str, float]:
    """Arithmetic mean per criterion over one brief's annotations."""
    if not scores:
        raise ValueError("score_brief needs at least one QualityScore")
    return {crit: sum(s.level(crit) for s in scores) / len(scores)
            for crit in QC_CRITERIA}


def agreement(a: Sequence[QualityScore], b: Sequence[QualityScore],
              criteria: Sequence[str] = QC_CRITERIA) -> AgreementReport:
    """Exact-match percent agreement between two annotators, per criterion."""
    if len(a) != len(b) or any(x.brief_ref != y.brief_ref for x, y in zip(a, b)):
        raise ValueError("annotator score lists must cover the same briefs in the same order")
    if not a:
        raise ValueError("agreement needs at least one scored item")
    frac = {crit: sum(1 for x, y in zip(a, b) if x.level(crit) == y.level(crit)) / len(a)
            for crit in criteria}
    return AgreementReport(per_criterion_agreement=frac, n_items=len(a))


QC_CSV_HEADER = ["symbol", "date", "annotator"] + list(QC_CRITERIA)


def load_qc_csv(path: str | Path) -> list[QualityScore]:
    """Annotation file: `symbol,date,annotator,date_accuracy,coverage,bias_awareness,source_diversity`."""
    out = []
    with open(path, newline="") as f:
        for rec in csv.DictReader(f):
            out.append(QualityScore(
                brief_ref=(rec["symbol"].upper(), dt.date.fromisoformat(rec["date"])),
                annotator=rec["annotator"],
                **{crit: int(rec[crit]) for crit in QC_CRITERIA},
            ))
    return out


def write_qc_csv(path: str | Path, scores: Sequence[QualityScore]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(QC_CSV_HEADER)
        for s in scores:
            w.writerow([s.brief_ref[0], s.brief_ref[1].isoformat(), s.annotator]
                       + [s.level(c) for c in QC_CRITERIA])


# --- Brief store -------------------------------------------------------------

def brief_path(root: str | Path, symbol: str, date: dt.date) -> Path:
    return Path(root) / "briefs" / symbol / date.isoformat()


def save_brief(root: str | Path, brief: DailyBrief) -> Path:
    path = brief_path(root, brief.asset.symbol, brief.date)
    path.parent.mkdir(parents=True, exist_ok=True)
    rec = {"symbol": brief.asset.symbol, "asset_class": brief.asset.asset_class.value,
           "date": brief.date.isoformat(), "summary": brief.summary,
           "themes": list(brief.themes), "sentiment_label": brief.sentiment_label,
           "source_item_ids": list(brief.source_item_ids), "available": brief.available}
    path.write_text(json.dumps(rec, sort_keys=True, indent=2) + "\n")
    return path


def load_brief(root: str | Path, symbol: str, date: dt.date) -> DailyBrief | None:
    from .marketdata import AssetClass

    path = brief_path(root, symbol, date)
    if not path.exists():
        return None
    rec = json.loads(path.read_text())
    return DailyBrief(
        asset=AssetId(rec["symbol"], AssetClass(rec["asset_class"])),
        date=dt.date.fromisoformat(rec["date"]), summary=rec["summary"],
        themes=tuple(rec["themes"]), sentiment_label=rec["sentiment_label"],
        source_item_ids=tuple(rec["source_item_ids"]), available=rec["available"],
    )
