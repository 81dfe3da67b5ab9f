// Equity comparison view: one SVG polyline per series on a shared date axis,
// with per-point hover tooltips.

import type { EquitySeries } from "./types.js";

const WIDTH = 720;
const HEIGHT = 320;
const MARGIN = 32;

const SVG_NS = "http://www.w3.org/2000/svg";

interface ScaledPoint {
  x: number;
  y: number;
  date: string;
  equity: number;
}

export class EquityView {
  private container: HTMLElement;
  private tooltip: HTMLElement;

  constructor(container: HTMLElement) {
    this.container = container;
    this.tooltip = document.createElement("div");
    this.tooltip.className = "equity-tooltip";
    this.tooltip.hidden = true;
  }

  update(series: EquitySeries[]): void {
    this.container.replaceChildren();
    if (series.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "no series";
      this.container.appendChild(empty);
      return;
    }

    // Shared axis over the union of all series dates.
    const dates = [...new Set(series.flatMap((s) => s.points.map(([d]) => d)))].sort();
    const dateX = new Map(dates.map((d, i) => [d, i]));
    const equities = series.flatMap((s) => s.points.map(([, e]) => e));
    const lo = Math.min(...equities, 1.0);
    const hi = Math.max(...equities, 1.0);
    const span = hi - lo || 1.0;

    const toX = (d: string) =>
      MARGIN + ((dateX.get(d) ?? 0) / Math.max(dates.length - 1, 1)) * (WIDTH - 2 * MARGIN);
    const toY = (e: number) => HEIGHT - MARGIN - ((e - lo) / span) * (HEIGHT - 2 * MARGIN);

    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    svg.classList.add("equity-chart");

    for (const s of series) {
      const scaled: ScaledPoint[] = s.points.map(([date, equity]) => ({
        x: toX(date),
        y: toY(equity),
        date,
        equity,
      }));
      const line = document.createElementNS(SVG_NS, "polyline");
      line.setAttribute("points", scaled.map((p) => `${p.x},${p.y}`).join(" "));
      line.setAttribute("fill", "none");
      line.dataset.label = s.label;
      svg.appendChild(line);

      for (const p of scaled) {
        const dot = document.createElementNS(SVG_NS, "circle");
        dot.setAttribute("cx", String(p.x));
        dot.setAttribute("cy", String(p.y));
        dot.setAttribute("r", "3");
        dot.classList.add("equity-point");
        dot.dataset.date = p.date;
        dot.dataset.equity = String(p.equity);
        dot.dataset.model = s.backbone;
        dot.dataset.strategy = s.strategy;
        dot.addEventListener("mouseenter", () => this.showTooltip(dot));
        dot.addEventListener("mouseleave", () => {
          this.tooltip.hidden = true;
        });
        svg.appendChild(dot);
      }
    }

    this.container.appendChild(svg);
    this.container.appendChild(this.tooltip);
  }

  private showTooltip(dot: SVGCircleElement): void {
    const { date, equity, model, strategy } = dot.dataset;
    this.tooltip.textContent =
      `${date}  balance ${Number(equity).toFixed(4)}  model ${model || "—"}  strategy ${strategy}`;
    this.tooltip.hidden = false;
  }
}
