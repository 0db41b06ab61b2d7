/** SVG/HTML builders for the visualization widgets.
 *
 * Every builder is a pure function from data to markup, so widgets can be
 * unit-tested without a browser; the app layer only mounts the strings and
 * wires events. Hover detail rides on <title> elements (exact values); the
 * boxplot axis is log-scaled while its tooltip stays linear.
 */

import type {
  BinCounts,
  DistributionSummary,
  TopKEntry,
  YearSeries,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const BAR_WIDTH = 18;
const BAR_GAP = 4;
const CHART_HEIGHT = 180;
const LABEL_SPACE = 24;

/** C1: counts per year; the NA bucket sits leftmost and zero-count years
 * keep their slot with a greyed label. */
export function renderBarChart(series: YearSeries, heading: string): string {
  const entries: { label: string; count: number }[] = [];
  if (series.na > 0) {
    entries.push({ label: "NA", count: series.na });
  }
  const years = series.years.map(([year]) => year);
  if (years.length > 0) {
    const first = Math.min(...years);
    const last = Math.max(...years);
    const byYear = new Map(series.years);
    for (let year = first; year <= last; year++) {
      entries.push({ label: String(year), count: byYear.get(year) ?? 0 });
    }
  }
  const peak = Math.max(1, ...entries.map((e) => e.count));
  const width = Math.max(60, entries.length * (BAR_WIDTH + BAR_GAP) + BAR_GAP);
  const bars = entries
    .map((entry, i) => {
      const height = Math.round((entry.count / peak) * (CHART_HEIGHT - 10));
      const x = BAR_GAP + i * (BAR_WIDTH + BAR_GAP);
      const y = CHART_HEIGHT - height;
      const labelClass = entry.count === 0 ? "year-label greyed" : "year-label";
      return (
        `<g class="bar" data-label="${escapeHtml(entry.label)}" data-count="${entry.count}">` +
        `<rect x="${x}" y="${y}" width="${BAR_WIDTH}" height="${height}">` +
        `<title>${escapeHtml(entry.label)}: ${entry.count}</title></rect>` +
        `<text class="${labelClass}" x="${x + BAR_WIDTH / 2}" y="${CHART_HEIGHT + 14}"` +
        ` text-anchor="middle">${escapeHtml(entry.label)}</text></g>`
      );
    })
    .join("");
  return (
    `<figure class="widget bar-chart"><figcaption>${escapeHtml(heading)}</figcaption>` +
    `<svg viewBox="0 0 ${width} ${CHART_HEIGHT + LABEL_SPACE}" role="img">${bars}</svg></figure>`
  );
}

/** Log position of a linear value on the boxplot axis; zeros are kept
 * renderable by a +1 shift (display only, values stay linear). */
export function logPosition(value: number, max: number, span: number): number {
  const top = Math.log1p(Math.max(max, 1));
  return (Math.log1p(Math.max(value, 0)) / top) * span;
}

/** C3: five-number summary on a log axis; the tooltip lists the exact
 * linear statistics. */
export function renderBoxplot(summary: DistributionSummary, heading: string): string {
  const span = 320;
  const x = (v: number) => 20 + logPosition(v, summary.max, span);
  const mid = 45;
  const tooltip =
    `min ${summary.min}, q1 ${summary.q1}, median ${summary.median}, ` +
    `q3 ${summary.q3}, max ${summary.max}, avg ${summary.avg}, n ${summary.n}`;
  return (
    `<figure class="widget boxplot"><figcaption>${escapeHtml(heading)}</figcaption>` +
    `<svg viewBox="0 0 ${span + 40} 90" role="img" class="log-scaled">` +
    `<title>${escapeHtml(tooltip)}</title>` +
    `<line class="whisker" x1="${x(summary.min)}" y1="${mid}" x2="${x(summary.q1)}" y2="${mid}"/>` +
    `<rect class="box" x="${x(summary.q1)}" y="${mid - 18}" width="${Math.max(
      1,
      x(summary.q3) - x(summary.q1),
    )}" height="36"/>` +
    `<line class="median" x1="${x(summary.median)}" y1="${mid - 18}" x2="${x(summary.median)}" y2="${mid + 18}"/>` +
    `<line class="whisker" x1="${x(summary.q3)}" y1="${mid}" x2="${x(summary.max)}" y2="${mid}"/>` +
    `</svg>` +
    `<dl class="stats" data-linear="true">` +
    `<dt>min</dt><dd>${summary.min}</dd><dt>q1</dt><dd>${summary.q1}</dd>` +
    `<dt>median</dt><dd>${summary.median}</dd><dt>q3</dt><dd>${summary.q3}</dd>` +
    `<dt>max</dt><dd>${summary.max}</dd><dt>avg</dt><dd>${summary.avg}</dd></dl></figure>`
  );
}

const TREEMAP_WIDTH = 420;
const TREEMAP_HEIGHT = 260;
const MIN_LABEL_AREA = 2600;

export interface TreemapBox {
  name: string;
  value: number;
  x: number;
  y: number;
  width: number;
  height: number;
  labelled: boolean;
}

/** Slice-and-dice layout, alternating split direction by depth. Labels
 * collapse on boxes too small to carry them. */
export function treemapLayout(entries: TopKEntry[]): TreemapBox[] {
  const boxes: TreemapBox[] = [];
  const total = entries.reduce((sum, [, value]) => sum + Math.max(value, 0), 0);
  if (total <= 0) {
    return boxes;
  }

  const place = (
    slice: TopKEntry[],
    x: number,
    y: number,
    width: number,
    height: number,
    horizontal: boolean,
  ): void => {
    if (slice.length === 0) {
      return;
    }
    if (slice.length === 1) {
      const [name, value] = slice[0]!;
      const area = width * height;
      boxes.push({
        name,
        value,
        x,
        y,
        width,
        height,
        labelled: area >= MIN_LABEL_AREA,
      });
      return;
    }
    const sliceTotal = slice.reduce((sum, [, value]) => sum + Math.max(value, 0), 0);
    const half = Math.ceil(slice.length / 2);
    const head = slice.slice(0, half);
    const tail = slice.slice(half);
    const headShare = sliceTotal
      ? head.reduce((sum, [, value]) => sum + Math.max(value, 0), 0) / sliceTotal
      : 0.5;
    if (horizontal) {
      const headWidth = width * headShare;
      place(head, x, y, headWidth, height, !horizontal);
      place(tail, x + headWidth, y, width - headWidth, height, !horizontal);
    } else {
      const headHeight = height * headShare;
      place(head, x, y, width, headHeight, !horizontal);
      place(tail, x, y + headHeight, width, height - headHeight, !horizontal);
    }
  };

  place(entries, 0, 0, TREEMAP_WIDTH, TREEMAP_HEIGHT, true);
  return boxes;
}

/** C4: top-k entries as a treemap; hovering shows the full name and value. */
export function renderTreemap(entries: TopKEntry[], heading: string): string {
  const boxes = treemapLayout(entries)
    .map((box) => {
      const label = box.labelled
        ? `<text x="${box.x + 4}" y="${box.y + 16}">${escapeHtml(box.name)}</text>`
        : "";
      return (
        `<g class="cell" data-name="${escapeHtml(box.name)}" data-value="${box.value}">` +
        `<rect x="${box.x}" y="${box.y}" width="${box.width}" height="${box.height}">` +
        `<title>${escapeHtml(box.name)}: ${box.value}</title></rect>${label}</g>`
      );
    })
    .join("");
  return (
    `<figure class="widget treemap"><figcaption>${escapeHtml(heading)}</figcaption>` +
    `<svg viewBox="0 0 ${TREEMAP_WIDTH} ${TREEMAP_HEIGHT}" role="img">${boxes}</svg></figure>`
  );
}

export function renderBins(bins: BinCounts, heading: string): string {
  const rows = Object.entries(bins)
    .map(
      ([label, count]) =>
        `<tr><td>${escapeHtml(label)}</td><td class="num">${count}</td></tr>`,
    )
    .join("");
  return (
    `<figure class="widget bins"><figcaption>${escapeHtml(heading)}</figcaption>` +
    `<table><thead><tr><th>citations</th><th>publications</th></tr></thead>` +
    `<tbody>${rows}</tbody></table></figure>`
  );
}

export function renderNotice(message: string): string {
  return (
    `<div class="notice" role="alert">${escapeHtml(message)}` +
    `<button class="dismiss" type="button">×</button></div>`
  );
}

export function renderLoading(): string {
  return `<div class="loading" aria-busy="true">loading…</div>`;
}
