import { FilterState, toQuery } from "./filters.js";
import type { EquityPayload, LeaderboardPayload } from "./types.js";

export class GatewayClient {
  constructor(
    private baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!resp.ok) {
      throw new Error(`gateway ${path} -> HTTP ${resp.status}`);
    }
    return (await resp.json()) as T;
  }

  leaderboard(filter: FilterState): Promise<LeaderboardPayload> {
    return this.get<LeaderboardPayload>(`/leaderboard${toQuery(filter)}`);
  }

  equity(filter: FilterState): Promise<EquityPayload> {
    return this.get<EquityPayload>(`/equity${toQuery(filter)}`);
  }
}
