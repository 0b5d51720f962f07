/** Deterministic SVG assembly: fixed layout, fixed formatting, no randomness. */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export interface LinearScale {
  (x: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((x: number) => r0 + ((x - d0) / span) * (r1 - r0)) as LinearScale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

/** Round-numbered tick positions covering the domain, about `count` of them. */
export function ticks(domain: [number, number], count = 6): number[] {
  const [lo, hi] = domain;
  const span = hi - lo;
  if (span <= 0) return [lo];
  const rawStep = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

/** Pad a [min, max] interval by a fraction on each side. */
export function padded(lo: number, hi: number, frac = 0.08): [number, number] {
  if (lo === hi) return [lo - 1, hi + 1];
  const pad = (hi - lo) * frac;
  return [lo - pad, hi + pad];
}

/** Coordinate formatting: two decimals is below pixel resolution here. */
export const px = (x: number): string => {
  const v = Math.round(x * 100) / 100;
  return Object.is(v, -0) ? "0" : String(v);
};

/** Tick-label formatting: short, locale-free. */
export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1000 || a < 0.001) return v.toExponential(1);
  return String(Math.round(v * 1000) / 1000);
}

export function el(tag: string, attrs: Record<string, string | number>, body = ""): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? px(v) : v}"`)
    .join(" ");
  return body === "" && !tag.startsWith("text")
    ? `<${tag} ${parts}/>`
    : `<${tag} ${parts}>${body}</${tag}>`;
}

export function textEl(x: number, y: number, body: string, extra: Record<string, string | number> = {}): string {
  return el(
    "text",
    { x, y, "font-family": "Helvetica, Arial, sans-serif", "font-size": 11, fill: "#333", ...extra },
    escapeText(body),
  );
}

export function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface Frame {
  width: number;
  height: number;
  margin: Margin;
  x: LinearScale;
  y: LinearScale;
}

export function makeFrame(
  width: number,
  height: number,
  margin: Margin,
  xDomain: [number, number],
  yDomain: [number, number],
): Frame {
  return {
    width,
    height,
    margin,
    x: linearScale(xDomain, [margin.left, width - margin.right]),
    y: linearScale(yDomain, [height - margin.bottom, margin.top]),
  };
}

export function renderAxes(frame: Frame, xLabel: string, yLabel: string): string {
  const { x, y, width, height, margin } = frame;
  const parts: string[] = [];
  const yBottom = height - margin.bottom;
  for (const t of ticks(x.domain)) {
    const xp = x(t);
    parts.push(el("line", { x1: xp, y1: yBottom, x2: xp, y2: margin.top, stroke: "#e0e0e0", "stroke-width": 0.5 }));
    parts.push(el("line", { x1: xp, y1: yBottom, x2: xp, y2: yBottom + 4, stroke: "#333" }));
    parts.push(textEl(xp, yBottom + 16, tickLabel(t), { "text-anchor": "middle" }));
  }
  for (const t of ticks(y.domain)) {
    const yp = y(t);
    parts.push(el("line", { x1: margin.left, y1: yp, x2: width - margin.right, y2: yp, stroke: "#e0e0e0", "stroke-width": 0.5 }));
    parts.push(el("line", { x1: margin.left - 4, y1: yp, x2: margin.left, y2: yp, stroke: "#333" }));
    parts.push(textEl(margin.left - 7, yp + 3.5, tickLabel(t), { "text-anchor": "end" }));
  }
  parts.push(el("rect", {
    x: margin.left, y: margin.top,
    width: width - margin.left - margin.right, height: yBottom - margin.top,
    fill: "none", stroke: "#333", "stroke-width": 1,
  }));
  parts.push(textEl((margin.left + width - margin.right) / 2, height - 10, xLabel, { "text-anchor": "middle", "font-size": 12 }));
  parts.push(el("g", { transform: `translate(14,${px((margin.top + yBottom) / 2)}) rotate(-90)` },
    textEl(0, 0, yLabel, { "text-anchor": "middle", "font-size": 12 })));
  return parts.join("\n");
}

export function svgDocument(width: number, height: number, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    el("rect", { x: 0, y: 0, width, height, fill: "white" }),
    body,
    "</svg>",
    "",
  ].join("\n");
}

// Perceptually ordered anchor colors (dark violet to yellow).
const COLOR_ANCHORS: [number, number, number][] = [
  [68, 1, 84], [72, 36, 117], [65, 68, 135], [53, 95, 141], [42, 120, 142],
  [33, 145, 140], [34, 168, 132], [68, 191, 112], [122, 209, 81], [189, 223, 38], [253, 231, 37],
];

/** Map t in [0, 1] to an rgb() string along the anchor ramp. */
export function colorRamp(t: number): string {
  const clamped = Math.min(Math.max(t, 0), 1);
  const pos = clamped * (COLOR_ANCHORS.length - 1);
  const i = Math.min(Math.floor(pos), COLOR_ANCHORS.length - 2);
  const f = pos - i;
  const mix = COLOR_ANCHORS[i].map((c, ch) => Math.round(c + f * (COLOR_ANCHORS[i + 1][ch] - c)));
  return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
}
