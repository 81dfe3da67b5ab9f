// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";

import { DEFAULT_REFRESH_SECONDS, emptyFilter } from "../src/filters.js";
import { OverviewView } from "../src/overview.js";
import { LEADERBOARD_FIXTURE } from "./fixtures.js";

function mount() {
  const container = document.createElement("div");
  document.body.appendChild(container);
  const filter = emptyFilter();
  const view = new OverviewView(container, filter);
  return { container, filter, view };
}

function renderedRanks(container: HTMLElement): string[] {
  return [...container.querySelectorAll<HTMLTableRowElement>("tbody tr")].map(
    (tr) => tr.dataset.rank!,
  );
}

function toggle(container: HTMLElement, dimension: string, value: string, on: boolean) {
  const box = container.querySelector<HTMLInputElement>(
    `input[data-dimension="${dimension}"][data-value="${value}"]`,
  )!;
  box.checked = on;
  box.dispatchEvent(new Event("change"));
}

beforeEach(() => {
  document.body.replaceChildren();
});

describe("overview table", () => {
  it("renders every row in rank order", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    expect(renderedRanks(container)).toEqual(["1", "2", "3", "4", "5", "6"]);
  });

  it("shows the payload's metric columns", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    const headers = [...container.querySelectorAll("th")].map((th) => th.textContent);
    expect(headers).toEqual([
      "Rank", "Agent", "Model", "Asset", "Strategy", "Balance",
      "CR", "CR (no fees)", "SR", "MDD", "Win rate",
    ]);
    const first = container.querySelector("tbody tr")!;
    const cells = [...first.querySelectorAll("td")].map((td) => td.textContent);
    expect(cells[5]).toBe("1.0667");
    expect(cells[6]).toBe("6.67%");
    expect(cells[10]).toBe("—"); // win rate undefined server-side
  });

  it("renders the empty state for a payload with no rows", () => {
    const { container, view } = mount();
    view.update({ version: "v0", rows: [] }, false);
    expect(container.querySelector(".empty-state")!.textContent).toBe("no runs");
    expect(container.querySelector("table")).toBeNull();
  });

  it("shows the stale badge only when flagged", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    expect(container.querySelector(".stale-badge")).toBeNull();
    view.update(LEADERBOARD_FIXTURE, true);
    expect(container.querySelector(".stale-badge")!.textContent).toBe("stale data");
  });

  it("keeps the last table when an error banner appears", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    view.showError("gateway unreachable");
    expect(container.querySelector(".error-banner")!.textContent).toBe("gateway unreachable");
    expect(renderedRanks(container)).toHaveLength(6);
  });
});

describe("filter dimensions", () => {
  it("assets filter restricts to matching rows", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    toggle(container, "assets", "BTC", true);
    expect(renderedRanks(container)).toEqual(["2", "3", "5"]);
  });

  it("agents filter restricts to matching rows", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    toggle(container, "agents", "Scripted", true);
    expect(renderedRanks(container)).toEqual(["5", "6"]);
  });

  it("models filter restricts to matching rows", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    toggle(container, "models", "stub-1", true);
    expect(renderedRanks(container)).toEqual(["2", "4"]);
  });

  it("strategies filter restricts to matching rows", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    toggle(container, "strategies", "cooldown", true);
    expect(renderedRanks(container)).toEqual(["4"]);
  });

  it("dimensions combine conjunctively", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    toggle(container, "assets", "BTC", true);
    toggle(container, "agents", "BuyAndHold", true);
    expect(renderedRanks(container)).toEqual(["3"]);
  });

  it("applying then clearing every filter restores the full row set", () => {
    const { container, view } = mount();
    view.update(LEADERBOARD_FIXTURE, false);
    const before = renderedRanks(container);
    toggle(container, "assets", "TSLA", true);
    toggle(container, "agents", "BuyAndHold", true);
    toggle(container, "models", "stub-1", true);
    toggle(container, "strategies", "baseline", true);
    expect(renderedRanks(container).length).toBeLessThan(before.length);
    toggle(container, "assets", "TSLA", false);
    toggle(container, "agents", "BuyAndHold", false);
    toggle(container, "models", "stub-1", false);
    toggle(container, "strategies", "baseline", false);
    expect(renderedRanks(container)).toEqual(before);
  });

  it("default refresh interval is 30 seconds", () => {
    const { filter } = mount();
    expect(DEFAULT_REFRESH_SECONDS).toBe(30);
    expect(filter.refreshSeconds).toBe(30);
  });
});
