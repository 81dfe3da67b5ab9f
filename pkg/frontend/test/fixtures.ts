// Static gateway payloads captured from a fixture run of the backend.

import type { EquityPayload, LeaderboardPayload, LeaderboardRow } from "../src/types.js";

function row(partial: Partial<LeaderboardRow> & Pick<LeaderboardRow, "rank" | "agent" | "asset">): LeaderboardRow {
  return {
    run_id: "fixture3d",
    backbone: "",
    strategy: "baseline",
    balance: 1.0,
    cr: 0,
    cr_ex_fees: 0,
    ar: 0,
    av: 0,
    sr: 0,
    mdd: 0,
    win_rate: null,
    as_of: "2025-08-06",
    ...partial,
  };
}

export const LEADERBOARD_FIXTURE: LeaderboardPayload = {
  version: "a1b2c3d4e5f60718",
  rows: [
    row({ rank: 1, agent: "BuyAndHold", asset: "TSLA", balance: 1.0667, cr: 0.0667, cr_ex_fees: 0.0667, ar: 0.49, av: 0.43, sr: 4.1, mdd: 0.0161 }),
    row({ rank: 2, agent: "GenericLLM", backbone: "stub-1", asset: "BTC", balance: 1.0301, cr: 0.0301, cr_ex_fees: 0.0301, ar: 0.25, av: 0.21, sr: 3.2, mdd: 0.0 }),
    row({ rank: 3, agent: "BuyAndHold", asset: "BTC", balance: 1.0184, cr: 0.0184, cr_ex_fees: 0.0184, ar: 0.12, av: 0.25, sr: 1.9, mdd: 0.0098 }),
    row({ rank: 4, agent: "GenericLLM", backbone: "stub-1", asset: "TSLA", strategy: "cooldown", balance: 1.0, cr: 0, sr: 0 }),
    row({ rank: 5, agent: "Scripted", asset: "BTC", balance: 0.9916, cr: -0.0084, cr_ex_fees: -0.0084, ar: -0.05, av: 0.18, sr: -1.1, mdd: 0.0161 }),
    row({ rank: 6, agent: "Scripted", asset: "TSLA", balance: 0.9839, cr: -0.0161, cr_ex_fees: -0.0161, ar: -0.09, av: 0.31, sr: -1.4, mdd: 0.0161 }),
  ],
};

export const EQUITY_FIXTURE: EquityPayload = {
  version: "a1b2c3d4e5f60718",
  series: [
    {
      run_id: "fixture3d",
      label: "BuyAndHold-BTC-none",
      agent: "BuyAndHold",
      backbone: "",
      asset: "BTC",
      strategy: "baseline",
      points: [
        ["2025-08-04", 1.0201],
        ["2025-08-05", 1.0284],
        ["2025-08-06", 1.0184],
      ],
    },
    {
      run_id: "fixture3d",
      label: "GenericLLM-BTC-stub-1",
      agent: "GenericLLM",
      backbone: "stub-1",
      asset: "BTC",
      strategy: "baseline",
      points: [
        ["2025-08-04", 1.0],
        ["2025-08-05", 1.0082],
        ["2025-08-06", 1.0301],
      ],
    },
    {
      run_id: "fixture3d",
      label: "Scripted-TSLA-none",
      agent: "Scripted",
      backbone: "",
      asset: "TSLA",
      strategy: "baseline",
      points: [
        ["2025-08-04", 1.0],
        ["2025-08-05", 0.9839],
        ["2025-08-06", 0.9839],
      ],
    },
  ],
};
