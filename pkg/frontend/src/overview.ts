// Overview table: rank-ordered metric rows with the four-dimension filter
// panel and a staleness badge driven by the payload version token.

import { FILTER_DIMENSIONS, FilterState, availableValues, filterRows } from "./filters.js";
import { balance, pct, ratio } from "./format.js";
import type { LeaderboardPayload, LeaderboardRow } from "./types.js";

const COLUMNS: [string, (r: LeaderboardRow) => string][] = [
  ["Rank", (r) => String(r.rank)],
  ["Agent", (r) => r.agent],
  ["Model", (r) => r.backbone || "—"],
  ["Asset", (r) => r.asset],
  ["Strategy", (r) => r.strategy],
  ["Balance", (r) => balance(r.balance)],
  ["CR", (r) => pct(r.cr)],
  ["CR (no fees)", (r) => pct(r.cr_ex_fees)],
  ["SR", (r) => ratio(r.sr)],
  ["MDD", (r) => pct(r.mdd)],
  ["Win rate", (r) => (r.win_rate === null ? "—" : pct(r.win_rate))],
];

export class OverviewView {
  private container: HTMLElement;
  private filter: FilterState;
  private payload: LeaderboardPayload | null = null;
  private stale = false;
  private onFilterChange: (() => void) | null = null;

  constructor(container: HTMLElement, filter: FilterState) {
    this.container = container;
    this.filter = filter;
  }

  setFilterChangeListener(cb: () => void): void {
    this.onFilterChange = cb;
  }

  update(payload: LeaderboardPayload, stale: boolean): void {
    this.payload = payload;
    this.stale = stale;
    this.render();
  }

  showError(message: string): void {
    // Keep the last payload on screen; just surface the banner.
    this.render(message);
  }

  visibleRows(): LeaderboardRow[] {
    if (this.payload === null) return [];
    return filterRows(this.filter, this.payload.rows);
  }

  private render(errorMessage?: string): void {
    this.container.replaceChildren();

    if (errorMessage) {
      const banner = document.createElement("div");
      banner.className = "error-banner";
      banner.textContent = errorMessage;
      this.container.appendChild(banner);
    }
    if (this.stale) {
      const badge = document.createElement("span");
      badge.className = "stale-badge";
      badge.textContent = "stale data";
      this.container.appendChild(badge);
    }

    if (this.payload === null) return;
    this.container.appendChild(this.buildFilterPanel());

    const rows = this.visibleRows();
    if (rows.length === 0 && this.payload.rows.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "no runs";
      this.container.appendChild(empty);
      return;
    }
    this.container.appendChild(this.buildTable(rows));
  }

  private buildFilterPanel(): HTMLElement {
    const panel = document.createElement("fieldset");
    panel.className = "filter-panel";
    const values = availableValues(this.payload!.rows);
    for (const dim of FILTER_DIMENSIONS) {
      const group = document.createElement("div");
      group.className = `filter-group filter-${dim}`;
      const label = document.createElement("span");
      label.textContent = dim;
      group.appendChild(label);
      for (const value of values[dim]) {
        const box = document.createElement("input");
        box.type = "checkbox";
        box.dataset.dimension = dim;
        box.dataset.value = value;
        box.checked = this.filter[dim].has(value);
        box.addEventListener("change", () => {
          if (box.checked) {
            this.filter[dim].add(value);
          } else {
            this.filter[dim].delete(value);
          }
          this.render();
          this.onFilterChange?.();
        });
        group.appendChild(box);
      }
      panel.appendChild(group);
    }
    return panel;
  }

  private buildTable(rows: LeaderboardRow[]): HTMLTableElement {
    const table = document.createElement("table");
    table.className = "overview-table";
    const head = table.createTHead().insertRow();
    for (const [title] of COLUMNS) {
      const th = document.createElement("th");
      th.textContent = title;
      head.appendChild(th);
    }
    const body = table.createTBody();
    for (const row of rows) {
      const tr = body.insertRow();
      tr.dataset.rank = String(row.rank);
      for (const [, cell] of COLUMNS) {
        tr.insertCell().textContent = cell(row);
      }
    }
    return table;
  }
}
