import { SweepPoint, SweepResult } from "./types.js";

export interface ChartLayout {
  width: number;
  height: number;
  padding: number;
}

const DEFAULT_LAYOUT: ChartLayout = { width: 520, height: 220, padding: 36 };

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

interface Scale {
  (value: number): number;
}

function linearScale(domainMin: number, domainMax: number, rangeMin: number, rangeMax: number): Scale {
  const span = domainMax - domainMin;
  if (span === 0) {
    return () => (rangeMin + rangeMax) / 2;
  }
  return (value: number) => rangeMin + ((value - domainMin) / span) * (rangeMax - rangeMin);
}

// Consecutive valid points form polyline segments; error points break the
// line and render as hoverable gap markers instead.
function segments(points: SweepPoint[], pick: (p: SweepPoint) => number | null): SweepPoint[][] {
  const runs: SweepPoint[][] = [];
  let current: SweepPoint[] = [];
  for (const point of points) {
    if (point.error === null && pick(point) !== null) {
      current.push(point);
    } else if (current.length > 0) {
      runs.push(current);
      current = [];
    }
  }
  if (current.length > 0) {
    runs.push(current);
  }
  return runs;
}

export function renderSweepChart(
  result: SweepResult,
  currentValue: number | null,
  layout: ChartLayout = DEFAULT_LAYOUT,
): string {
  const { width, height, padding } = layout;
  const points = result.points;
  if (points.length === 0) {
    return `<svg class="sweep-chart" viewBox="0 0 ${width} ${height}"></svg>`;
  }
  const values = points.map((p) => p.value);
  const x = linearScale(Math.min(...values), Math.max(...values), padding, width - padding);

  const woes = points.filter((p) => p.woe_total !== null).map((p) => p.woe_total as number);
  const woeMin = woes.length > 0 ? Math.min(0, ...woes) : -1;
  const woeMax = woes.length > 0 ? Math.max(0, ...woes) : 1;
  const yWoe = linearScale(woeMin, woeMax, height - padding, padding);
  const yPosterior = linearScale(0, 1, height - padding, padding);

  const parts: string[] = [];

  const zeroY = yWoe(0).toFixed(1);
  parts.push(`<line class="axis" x1="${padding}" y1="${zeroY}" x2="${width - padding}" y2="${zeroY}"/>`);
  parts.push(
    `<text class="axis-label" x="${padding}" y="${Number(zeroY) - 4}">0 dB</text>`,
  );

  for (const run of segments(points, (p) => p.woe_total)) {
    const path = run
      .map((p) => `${x(p.value).toFixed(1)},${yWoe(p.woe_total as number).toFixed(1)}`)
      .join(" ");
    parts.push(`<polyline class="series-woe" points="${path}"/>`);
  }
  for (const run of segments(points, (p) => p.posterior_p_h1)) {
    const path = run
      .map((p) => `${x(p.value).toFixed(1)},${yPosterior(p.posterior_p_h1 as number).toFixed(1)}`)
      .join(" ");
    parts.push(`<polyline class="series-posterior" points="${path}"/>`);
  }

  for (const point of points) {
    const px = x(point.value).toFixed(1);
    if (point.error !== null) {
      parts.push(
        `<g class="gap-marker"><circle cx="${px}" cy="${(height - padding).toFixed(1)}" r="4">` +
          `<title>${escapeXml(`${point.value}: ${point.error}`)}</title></circle></g>`,
      );
      continue;
    }
    const py = yWoe(point.woe_total as number).toFixed(1);
    parts.push(
      `<circle class="point" data-value="${point.value}" cx="${px}" cy="${py}" r="5">` +
        `<title>${escapeXml(
          `${result.target} = ${point.value}: ${(point.woe_total as number).toFixed(2)} dB, ` +
            `P(H1) = ${(point.posterior_p_h1 as number).toFixed(3)}`,
        )}</title></circle>`,
    );
  }

  if (currentValue !== null) {
    const cx = x(currentValue).toFixed(1);
    parts.push(`<line class="current-marker" x1="${cx}" y1="${padding}" x2="${cx}" y2="${height - padding}"/>`);
  }

  return `<svg class="sweep-chart" viewBox="0 0 ${width} ${height}">${parts.join("")}</svg>`;
}
