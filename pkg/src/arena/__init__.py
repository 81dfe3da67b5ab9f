"""Arena: a live/replay trading benchmark harness for daily decision agents.

Ingests and verifies market data, runs agents through a standardized daily
decision protocol, accounts their portfolios, computes performance metrics,
and serves a continuously updated leaderboard. Everything that happens in a
run is recorded in an append-only event log and can be replayed bit-exactly.
"""

__version__ = "0.1.0"
