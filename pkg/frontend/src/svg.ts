/**
 * Minimal deterministic SVG chart primitives.
 *
 * No timestamps, no generated ids, fixed coordinate precision: identical
 * inputs produce identical bytes.
 */

export interface Extent {
  min: number;
  max: number;
}

export interface Series {
  label: string;
  points: Array<[number, number]>;
  color: string;
  dashed?: boolean;
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
];

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 48, right: 24, bottom: 52, left: 64 };

function fmt(value: number): string {
  return value.toFixed(2);
}

export function padExtent(extent: Extent, fraction = 0.05): Extent {
  const span = extent.max - extent.min;
  if (span === 0) {
    return { min: extent.min - 1, max: extent.max + 1 };
  }
  return { min: extent.min - fraction * span, max: extent.max + fraction * span };
}

export function dataExtent(values: number[]): Extent {
  return { min: Math.min(...values), max: Math.max(...values) };
}

/** Evenly spaced ticks rounded to a power-of-ten friendly step. */
export function ticks(extent: Extent, count = 6): number[] {
  const span = extent.max - extent.min;
  const rawStep = span / Math.max(count - 1, 1);
  const power = Math.floor(Math.log10(rawStep));
  const base = Math.pow(10, power);
  const step = [1, 2, 5, 10].map((k) => k * base).find((s) => span / s <= count) ?? base * 10;
  const start = Math.ceil(extent.min / step) * step;
  const out: number[] = [];
  for (let v = start; v <= extent.max + 1e-9; v += step) {
    out.push(Number(v.toFixed(10)));
  }
  return out;
}

function scale(extent: Extent, rangeMin: number, rangeMax: number) {
  const span = extent.max - extent.min || 1;
  return (v: number) => rangeMin + ((v - extent.min) / span) * (rangeMax - rangeMin);
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  xExtent: Extent;
  yExtent: Extent;
  series: Series[];
}

function tickLabel(value: number): string {
  return Math.abs(value) >= 1000 ? value.toExponential(1) : String(Number(value.toFixed(6)));
}

export function renderChart(spec: ChartSpec): string {
  const x = scale(spec.xExtent, MARGIN.left, WIDTH - MARGIN.right);
  const y = scale(spec.yExtent, HEIGHT - MARGIN.bottom, MARGIN.top);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  for (const t of ticks(spec.xExtent)) {
    const px = fmt(x(t));
    parts.push(
      `<line x1="${px}" y1="${MARGIN.top}" x2="${px}" y2="${HEIGHT - MARGIN.bottom}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${px}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle" ` +
        `font-size="12">${tickLabel(t)}</text>`,
    );
  }
  for (const t of ticks(spec.yExtent)) {
    const py = fmt(y(t));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${py}" x2="${WIDTH - MARGIN.right}" y2="${py}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${py}" text-anchor="end" dominant-baseline="middle" ` +
        `font-size="12">${tickLabel(t)}</text>`,
    );
  }

  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${WIDTH - MARGIN.left - MARGIN.right}" ` +
      `height="${HEIGHT - MARGIN.top - MARGIN.bottom}" fill="none" stroke="#333333"/>`,
  );

  for (const series of spec.series) {
    const coords = series.points.map(([px, py]) => `${fmt(x(px))},${fmt(y(py))}`);
    const dash = series.dashed ? ` stroke-dasharray="6,4"` : "";
    if (coords.length > 1) {
      parts.push(
        `<polyline points="${coords.join(" ")}" fill="none" stroke="${series.color}" ` +
          `stroke-width="2"${dash}/>`,
      );
    }
    for (const c of coords) {
      const [cx, cy] = c.split(",");
      parts.push(`<circle cx="${cx}" cy="${cy}" r="3" fill="${series.color}"/>`);
    }
  }

  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${escapeXml(spec.title)}</text>`,
  );
  parts.push(
    `<text x="${WIDTH / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13">` +
      `${escapeXml(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text x="18" y="${HEIGHT / 2}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 18 ${HEIGHT / 2})">${escapeXml(spec.yLabel)}</text>`,
  );

  spec.series.forEach((series, i) => {
    const lx = MARGIN.left + 12;
    const ly = MARGIN.top + 14 + i * 18;
    const dash = series.dashed ? ` stroke-dasharray="6,4"` : "";
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 26}" y2="${ly}" stroke="${series.color}" ` +
        `stroke-width="2"${dash}/>`,
    );
    parts.push(
      `<text x="${lx + 32}" y="${ly + 4}" font-size="12">${escapeXml(series.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
