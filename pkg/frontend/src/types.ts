// Payload shapes for the gateway's read endpoints. The dashboard consumes
// GET /leaderboard and GET /equity only; it never mutates server state.

export interface LeaderboardRow {
  rank: number;
  run_id: string;
  agent: string;
  backbone: string;
  asset: string;
  strategy: string;
  balance: number;
  cr: number;
  cr_ex_fees: number;
  ar: number;
  av: number;
  sr: number | null;
  mdd: number;
  win_rate: number | null;
  as_of: string;
}

export interface LeaderboardPayload {
  version: string;
  rows: LeaderboardRow[];
}

export interface EquitySeries {
  run_id: string;
  /** "agent-asset-model" */
  label: string;
  agent: string;
  backbone: string;
  asset: string;
  strategy: string;
  /** ordered [iso date, equity] pairs; dates strictly increasing, equity > 0 */
  points: [string, number][];
}

export interface EquityPayload {
  version: string;
  series: EquitySeries[];
}
