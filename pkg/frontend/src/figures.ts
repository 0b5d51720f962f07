/**
 * The three figure kinds, each a pure function from parsed inputs to an SVG
 * string. Costs are never recomputed here; the CSV/JSON numbers are the
 * single source of truth.
 */

import { ComparisonBar, GridData, SweepData } from "./contracts.js";
import {
  colorRamp,
  el,
  escapeText,
  makeFrame,
  padded,
  px,
  renderAxes,
  svgDocument,
  textEl,
} from "./svg.js";

const LINE = "#1f77b4";
const POINT = "#d62728";
const MARKER_MAX = "#2ca02c";
const MARKER_MIN = "#9467bd";

export interface SweepOptions {
  title?: string;
  xLabel?: string;
}

export function sweepFigure(data: SweepData, opts: SweepOptions = {}): string {
  const width = 760;
  const height = 460;
  const margin = { top: 42, right: 24, bottom: 48, left: 64 };
  const xs = data.rows.map((r) => r.param);
  const lows = data.rows.map((r) => (r.mc !== null ? r.mc - 3 * (r.stderr ?? 0) : r.analytic));
  const highs = data.rows.map((r) => (r.mc !== null ? r.mc + 3 * (r.stderr ?? 0) : r.analytic));
  const yAll = data.rows.map((r) => r.analytic).concat(lows, highs);
  const frame = makeFrame(
    width,
    height,
    margin,
    padded(Math.min(...xs), Math.max(...xs)),
    padded(Math.min(...yAll), Math.max(...yAll)),
  );
  const parts: string[] = [renderAxes(frame, opts.xLabel ?? "swept parameter", "cost (MSE)")];

  const path = data.rows
    .map((r, i) => `${i === 0 ? "M" : "L"}${px(frame.x(r.param))},${px(frame.y(r.analytic))}`)
    .join(" ");
  parts.push(el("path", { d: path, fill: "none", stroke: LINE, "stroke-width": 1.8, class: "analytic-curve" }));

  const hasMc = data.rows.some((r) => r.mc !== null);
  if (hasMc) {
    for (const r of data.rows) {
      if (r.mc === null) continue;
      const xp = frame.x(r.param);
      const lo = frame.y(r.mc - 3 * (r.stderr ?? 0));
      const hi = frame.y(r.mc + 3 * (r.stderr ?? 0));
      parts.push(el("line", { x1: xp, y1: lo, x2: xp, y2: hi, stroke: POINT, "stroke-width": 1 }));
      parts.push(el("circle", { cx: xp, cy: frame.y(r.mc), r: 2.4, fill: POINT, class: "mc-point" }));
    }
  }

  const markers: [number, string, string, string][] = [
    [data.argmaxParam, MARKER_MAX, "argmax", "marker-argmax"],
    [data.argminParam, MARKER_MIN, "argmin", "marker-argmin"],
  ];
  for (const [param, color, name, cls] of markers) {
    const xp = frame.x(param);
    const marker = [
      el("line", {
        x1: xp, y1: height - margin.bottom, x2: xp, y2: margin.top,
        stroke: color, "stroke-width": 1.4, "stroke-dasharray": "5,3",
      }),
      textEl(xp + 4, margin.top + (name === "argmax" ? 12 : 26), `${name} = ${tickText(param)}`, { fill: color }),
    ].join("\n");
    parts.push(el("g", { class: cls, "data-param": String(param) }, marker));
  }

  const legendY = margin.top - 22;
  parts.push(el("line", { x1: margin.left, y1: legendY, x2: margin.left + 26, y2: legendY, stroke: LINE, "stroke-width": 1.8 }));
  parts.push(textEl(margin.left + 32, legendY + 3.5, "analytic cost"));
  if (hasMc) {
    parts.push(el("circle", { cx: margin.left + 136, cy: legendY, r: 2.4, fill: POINT }));
    parts.push(textEl(margin.left + 144, legendY + 3.5, "Monte Carlo (±3 stderr)"));
  }
  if (opts.title) {
    parts.push(textEl(width / 2, 16, opts.title, { "text-anchor": "middle", "font-size": 13 }));
  }
  return svgDocument(width, height, parts.join("\n"));
}

function tickText(v: number): string {
  return String(Math.round(v * 1e6) / 1e6);
}

export function comparisonFigure(bars: ComparisonBar[], title?: string): string {
  const width = 720;
  const height = 430;
  const margin = { top: 42, right: 24, bottom: 84, left: 64 };
  // ordered bar chart: ascending by value, original order breaks ties
  const ordered = bars
    .map((bar, i) => ({ ...bar, i }))
    .sort((a, b) => a.value - b.value || a.i - b.i);
  const frame = makeFrame(width, height, margin, [0, ordered.length], [0, Math.max(...bars.map((b) => b.value)) * 1.15]);
  const parts: string[] = [renderAxes(frame, "", "cost (MSE)")];
  const slot = (frame.x.range[1] - frame.x.range[0]) / ordered.length;
  const barWidth = slot * 0.62;
  const palette = ["#72b7d6", "#1f77b4", "#ff7f0e", "#8c564b"];
  ordered.forEach((bar, pos) => {
    const cx = frame.x.range[0] + slot * (pos + 0.5);
    const y = frame.y(bar.value);
    const body = [
      el("rect", {
        x: cx - barWidth / 2, y,
        width: barWidth, height: frame.y(0) - y,
        fill: palette[bar.i], stroke: "#333", "stroke-width": 0.5,
      }),
      textEl(cx, y - 6, tickText(bar.value), { "text-anchor": "middle" }),
    ].join("\n");
    parts.push(
      el("g", { class: "cost-bar", "data-rank": pos, "data-label": escapeText(bar.label), "data-value": String(bar.value) }, body),
    );
    // wrapped two-line category labels
    const words = bar.label.split(", ");
    words.forEach((line, row) => {
      parts.push(textEl(cx, frame.y(0) + 18 + row * 13, line, { "text-anchor": "middle" }));
    });
  });
  if (title) parts.push(textEl(width / 2, 16, title, { "text-anchor": "middle", "font-size": 13 }));
  return svgDocument(width, height, parts.join("\n"));
}

export function heatmapFigure(grid: GridData, title?: string): string {
  const width = 760;
  const height = 520;
  const margin = { top: 42, right: 96, bottom: 48, left: 64 };
  const txStep = grid.txGains.length > 1 ? grid.txGains[1] - grid.txGains[0] : 1;
  const advStep = grid.advGains.length > 1 ? grid.advGains[1] - grid.advGains[0] : 1;
  const frame = makeFrame(
    width,
    height,
    margin,
    [grid.txGains[0] - txStep / 2, grid.txGains[grid.txGains.length - 1] + txStep / 2],
    [grid.advGains[0] - advStep / 2, grid.advGains[grid.advGains.length - 1] + advStep / 2],
  );
  const flat = grid.cost.flat();
  const lo = Math.min(...flat);
  const hi = Math.max(...flat);
  const span = hi - lo || 1;
  const parts: string[] = [];
  grid.txGains.forEach((tx, i) => {
    grid.advGains.forEach((adv, j) => {
      const x0 = frame.x(tx - txStep / 2);
      const x1 = frame.x(tx + txStep / 2);
      const y0 = frame.y(adv - advStep / 2);
      const y1 = frame.y(adv + advStep / 2);
      parts.push(el("rect", {
        x: x0, y: Math.min(y0, y1),
        width: x1 - x0, height: Math.abs(y0 - y1),
        fill: colorRamp((grid.cost[i][j] - lo) / span),
      }));
    });
  });
  parts.push(renderAxes(frame, "transmitter gain", "jammer gain"));

  const sx = frame.x(grid.txStar);
  const sy = frame.y(grid.advStar);
  const annotation = [
    el("circle", { cx: sx, cy: sy, r: 6, fill: "none", stroke: "white", "stroke-width": 2 }),
    el("circle", { cx: sx, cy: sy, r: 6, fill: "none", stroke: "#d62728", "stroke-width": 1 }),
    el("line", { x1: sx - 11, y1: sy, x2: sx + 11, y2: sy, stroke: "white", "stroke-width": 1 }),
    el("line", { x1: sx, y1: sy - 11, x2: sx, y2: sy + 11, stroke: "white", "stroke-width": 1 }),
    textEl(sx + 10, sy - 10, `equilibrium (${tickText(grid.txStar)}, ${tickText(grid.advStar)})`, { fill: "#111", "font-weight": "bold" }),
  ].join("\n");
  parts.push(el("g", {
    class: "saddle-annotation",
    "data-tx-star": String(grid.txStar),
    "data-adv-star": String(grid.advStar),
  }, annotation));

  // color bar
  const cbX = width - margin.right + 28;
  const cbTop = margin.top;
  const cbH = height - margin.top - margin.bottom;
  const steps = 48;
  for (let s = 0; s < steps; s++) {
    const t = s / (steps - 1);
    parts.push(el("rect", {
      x: cbX, y: cbTop + cbH - ((s + 1) * cbH) / steps,
      width: 14, height: cbH / steps + 0.5,
      fill: colorRamp(t),
    }));
  }
  parts.push(el("rect", { x: cbX, y: cbTop, width: 14, height: cbH, fill: "none", stroke: "#333", "stroke-width": 0.6 }));
  parts.push(textEl(cbX + 18, cbTop + 8, tickText(hi)));
  parts.push(textEl(cbX + 18, cbTop + cbH, tickText(lo)));
  parts.push(textEl(cbX + 7, cbTop - 8, "cost", { "text-anchor": "middle" }));
  if (title) parts.push(textEl(width / 2, 16, title, { "text-anchor": "middle", "font-size": 13 }));
  return svgDocument(width, height, parts.join("\n"));
}
