import datetime as dt
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from arena.marketdata import AssetClass, AssetId, PriceBar
from arena.protocol import AgentSpec, Framework, ProtocolConfig
from arena.providers import StubProvider, record_reply
from arena.session import MarketStore, RunConfig, make_agent

TSLA = AssetId("TSLA", AssetClass.EQUITY)
BTC = AssetId("BTC", AssetClass.CRYPTO)


def bars_for(asset, start, closes, skip_weekends=False):
    """Consecutive daily bars from `start`, one close per element."""
    out = []
    d = start
    for c in closes:
        if skip_weekends:
            while d.weekday() >= 5:
                d += dt.timedelta(days=1)
        out.append(PriceBar(asset=asset, date=d, close=float(c), source="fix"))
        d += dt.timedelta(days=1)
    return out


# The bundled 3-day fixture: warm-up 2025-08-01..03, live 2025-08-04..06.
FIXTURE_PRICES = {
    "TSLA": {  # equity: weekdays only
        dt.date(2025, 8, 1): 300.0,
        dt.date(2025, 8, 4): 310.0,
        dt.date(2025, 8, 5): 305.0,
        dt.date(2025, 8, 6): 320.0,
    },
    "BTC": {  # crypto: every day
        dt.date(2025, 8, 1): 60000.0,
        dt.date(2025, 8, 2): 60500.0,
        dt.date(2025, 8, 3): 59800.0,
        dt.date(2025, 8, 4): 61000.0,
        dt.date(2025, 8, 5): 61500.0,
        dt.date(2025, 8, 6): 60900.0,
    },
}

FIXTURE_SCRIPT = {
    "2025-08-01": "HOLD", "2025-08-02": "BUY", "2025-08-03": "BUY",
    "2025-08-04": "SELL", "2025-08-05": "BUY", "2025-08-06": "HOLD",
}


def fixture_config(run_id="fixture3d", fee_bps=0.0):
    return RunConfig(
        run_id=run_id,
        assets=(TSLA, BTC),
        start=dt.date(2025, 8, 1),
        live_start=dt.date(2025, 8, 4),
        end=dt.date(2025, 8, 6),
        fee_bps=fee_bps,
        protocol=ProtocolConfig(memory_size=7, retry_limit=3),
    )


def fixture_market(config=None):
    config = config or fixture_config()
    bars = [PriceBar(asset=a, date=d, close=c, source="fix")
            for a in config.assets
            for d, c in FIXTURE_PRICES[a.symbol].items()]
    return MarketStore(bars)


def fixture_agents(config=None, llm_replies_root=None):
    """BuyAndHold + Scripted; optionally a recorded-reply LLM agent."""
    config = config or fixture_config()
    specs = [
        AgentSpec(Framework.BUY_AND_HOLD),
        AgentSpec(Framework.SCRIPTED, params={"script": dict(FIXTURE_SCRIPT)}),
    ]
    if llm_replies_root is not None:
        specs.append(AgentSpec(Framework.GENERIC_LLM, backbone="stub-1"))

    def factory(spec):
        from arena.providers import RecordedProvider

        return RecordedProvider(llm_replies_root)

    return [make_agent(s, config.protocol, factory if llm_replies_root else None)
            for s in specs]


def record_llm_replies(root, dates=None, assets=("TSLA", "BTC")):
    """One parseable recorded reply per (asset, date) for the stub LLM agent."""
    dates = dates or sorted({d for p in FIXTURE_PRICES.values() for d in p})
    actions = ["Buy", "Sell", "Hold"]
    for i, date in enumerate(dates):
        for symbol in assets:
            record_reply(root, "GenericLLM-stub-1", symbol, date, 1,
                         f"Desk view for {symbol}.\n[Decision]: {actions[i % 3]}")


@pytest.fixture
def fixture_session(tmp_path):
    config = fixture_config()
    return config, fixture_agents(config), fixture_market(config)
