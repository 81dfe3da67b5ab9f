import type { EquitySeries, LeaderboardRow } from "./types.js";

export const FILTER_DIMENSIONS = ["agents", "assets", "models", "strategies"] as const;
export type FilterDimension = (typeof FILTER_DIMENSIONS)[number];

export const DEFAULT_REFRESH_SECONDS = 30;

/** Empty set on any dimension means that dimension is unconstrained. */
export interface FilterState {
  agents: Set<string>;
  assets: Set<string>;
  models: Set<string>;
  strategies: Set<string>;
  refreshSeconds: number;
}

export function emptyFilter(refreshSeconds: number = DEFAULT_REFRESH_SECONDS): FilterState {
  if (refreshSeconds < 1) {
    throw new Error("refreshSeconds must be >= 1");
  }
  return {
    agents: new Set(),
    assets: new Set(),
    models: new Set(),
    strategies: new Set(),
    refreshSeconds,
  };
}

interface Filterable {
  agent: string;
  asset: string;
  backbone: string;
  strategy: string;
}

export function matches(filter: FilterState, item: Filterable): boolean {
  return (
    (filter.agents.size === 0 || filter.agents.has(item.agent)) &&
    (filter.assets.size === 0 || filter.assets.has(item.asset)) &&
    (filter.models.size === 0 || filter.models.has(item.backbone)) &&
    (filter.strategies.size === 0 || filter.strategies.has(item.strategy))
  );
}

export function filterRows(filter: FilterState, rows: LeaderboardRow[]): LeaderboardRow[] {
  return rows.filter((r) => matches(filter, r));
}

export function filterSeries(filter: FilterState, series: EquitySeries[]): EquitySeries[] {
  return series.filter((s) => matches(filter, s));
}

/** Query string for the gateway; the four dimensions and nothing else. */
export function toQuery(filter: FilterState): string {
  const params = new URLSearchParams();
  const axes: [FilterDimension, Set<string>][] = [
    ["agents", filter.agents],
    ["assets", filter.assets],
    ["models", filter.models],
    ["strategies", filter.strategies],
  ];
  for (const [name, values] of axes) {
    if (values.size > 0) {
      params.set(name, [...values].sort().join(","));
    }
  }
  const qs = params.toString();
  return qs ? `?${qs}` : "";
}

/** Distinct values present in the rows, per dimension, for the filter panel. */
export function availableValues(rows: Filterable[]): Record<FilterDimension, string[]> {
  const collect = (pick: (r: Filterable) => string) =>
    [...new Set(rows.map(pick))].filter((v) => v !== "").sort();
  return {
    agents: collect((r) => r.agent),
    assets: collect((r) => r.asset),
    models: collect((r) => r.backbone),
    strategies: collect((r) => r.strategy),
  };
}
