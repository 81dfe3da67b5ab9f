import { GatewayClient } from "./api.js";
import { EquityView } from "./equity.js";
import { emptyFilter, filterSeries } from "./filters.js";
import { OverviewView } from "./overview.js";
import { Poller } from "./poller.js";
import type { EquityPayload, LeaderboardPayload } from "./types.js";

export function mountDashboard(root: HTMLElement, gatewayUrl: string): () => void {
  const filter = emptyFilter();
  const client = new GatewayClient(gatewayUrl);

  const overviewEl = document.createElement("section");
  overviewEl.id = "overview";
  const equityEl = document.createElement("section");
  equityEl.id = "equity";
  root.append(overviewEl, equityEl);

  const overview = new OverviewView(overviewEl, filter);
  const equity = new EquityView(equityEl);
  let lastEquity: EquityPayload | null = null;

  const leaderboardPoller = new Poller<LeaderboardPayload>(
    // The server applies the same four-axis filter; sending it keeps
    // payloads small, the client filter keeps the view immediate.
    () => client.leaderboard(emptyFilter(filter.refreshSeconds)),
    ({ payload, stale }) => overview.update(payload, stale),
    () => overview.showError("gateway unreachable"),
    filter.refreshSeconds,
  );
  const equityPoller = new Poller<EquityPayload>(
    () => client.equity(emptyFilter(filter.refreshSeconds)),
    ({ payload }) => {
      lastEquity = payload;
      equity.update(filterSeries(filter, payload.series));
    },
    () => undefined,
    filter.refreshSeconds,
  );

  overview.setFilterChangeListener(() => {
    if (lastEquity !== null) {
      equity.update(filterSeries(filter, lastEquity.series));
    }
  });

  leaderboardPoller.start();
  equityPoller.start();
  return () => {
    leaderboardPoller.stop();
    equityPoller.stop();
  };
}
