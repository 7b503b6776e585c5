/**
 * Hand-rolled SVG charts.
 *
 * Every mark that encodes a statistic carries the exact value in a
 * data-value attribute (plus data-subset / data-category / data-bin where
 * applicable), so tests - and curious users - can check each plotted
 * number against the API snapshot it came from. Geometry is derived from
 * those same values and nothing else.
 */

import type { Distribution } from "./api.js";
import { subsetColor } from "./colors.js";
import { svg } from "./dom.js";
import { fmtBound } from "./format.js";

const CHART = {
  width: 430,
  height: 170,
  padTop: 8,
  padRight: 10,
  padBottom: 26,
  padLeft: 10,
  barGap: 2,
  groupGap: 8,
  markerRadius: 2.5,
};

const GLYPH = {
  width: 96,
  height: 14,
  padX: 5,
  dotRadius: 3.5,
};

const HEAT = {
  cell: 20,
  gap: 2,
  labelWidth: 84,
  labelHeight: 16,
};

interface Series {
  label: string;
  distribution: Distribution;
}

function plotArea() {
  return {
    x0: CHART.padLeft,
    y0: CHART.padTop,
    width: CHART.width - CHART.padLeft - CHART.padRight,
    height: CHART.height - CHART.padTop - CHART.padBottom,
  };
}

function maxFraction(series: Series[]): number {
  let max = 0;
  for (const { distribution } of series) {
    for (const fraction of distribution.fractions) {
      if (fraction > max) max = fraction;
    }
  }
  return max > 0 ? max : 1;
}

function frame(): SVGSVGElement {
  return svg("svg", {
    viewBox: `0 0 ${CHART.width} ${CHART.height}`,
    width: CHART.width,
    height: CHART.height,
    class: "chart",
  });
}

function baseline(root: SVGSVGElement): void {
  const area = plotArea();
  root.append(
    svg("line", {
      x1: area.x0,
      y1: area.y0 + area.height,
      x2: area.x0 + area.width,
      y2: area.y0 + area.height,
      class: "axis-line",
    }),
  );
}

const SIZE_BAR = {
  width: 430,
  height: 22,
  gap: 1,
};

/**
 * One horizontal stacked bar showing how the rows split across subsets.
 * Segment widths are proportional to the subset fractions; each segment
 * carries its exact fraction and count.
 */
export function sizeBars(
  subsets: { label: string; count: number; fraction: number }[],
): SVGSVGElement {
  const root = svg("svg", {
    viewBox: `0 0 ${SIZE_BAR.width} ${SIZE_BAR.height}`,
    width: SIZE_BAR.width,
    height: SIZE_BAR.height,
    class: "chart size-bars",
  });
  let x = 0;
  for (const { label, count, fraction } of subsets) {
    const width = Math.max(0, fraction * SIZE_BAR.width - SIZE_BAR.gap);
    root.append(
      svg("rect", {
        x,
        y: 0,
        width,
        height: SIZE_BAR.height,
        fill: subsetColor(label),
        class: "mark segment",
        "data-subset": label,
        "data-count": count,
        "data-value": String(fraction),
      }),
    );
    x += fraction * SIZE_BAR.width;
  }
  return root;
}

/**
 * Grouped bar chart for categorical distributions: one bar per category
 * per series, all series sharing the category axis.
 */
export function categoricalChart(series: Series[]): SVGSVGElement {
  const root = frame();
  baseline(root);
  const area = plotArea();
  const first = series[0];
  if (first === undefined || first.distribution.kind !== "categorical") return root;
  const categories = first.distribution.categories;
  const max = maxFraction(series);
  const groupWidth = area.width / Math.max(categories.length, 1);
  const barWidth = Math.max(
    1,
    (groupWidth - CHART.groupGap - CHART.barGap * (series.length - 1)) / series.length,
  );

  categories.forEach((category, index) => {
    const groupX = area.x0 + index * groupWidth + CHART.groupGap / 2;
    series.forEach(({ label, distribution }, position) => {
      const fraction = distribution.fractions[index] ?? 0;
      const barHeight = (fraction / max) * area.height;
      root.append(
        svg("rect", {
          x: groupX + position * (barWidth + CHART.barGap),
          y: area.y0 + area.height - barHeight,
          width: barWidth,
          height: Math.max(barHeight, fraction > 0 ? 1 : 0),
          fill: subsetColor(label),
          class: "mark bar",
          "data-subset": label,
          "data-category": category,
          "data-value": String(fraction),
        }),
      );
    });
    root.append(
      svg("text", {
        x: groupX + (groupWidth - CHART.groupGap) / 2,
        y: CHART.height - 8,
        class: "axis-text",
        "text-anchor": "middle",
        text: category,
      }),
    );
  });
  return root;
}

/**
 * Overlaid area chart for numerical distributions sharing bin edges.
 * Each series draws a translucent area plus one marker per bin carrying
 * the exact plotted fraction.
 */
export function numericalChart(series: Series[]): SVGSVGElement {
  const root = frame();
  baseline(root);
  const area = plotArea();
  const first = series[0];
  if (first === undefined || first.distribution.kind !== "numerical") return root;
  const edges = first.distribution.bin_edges;
  const bins = edges.length - 1;
  if (bins < 1) return root;
  const lo = edges[0] ?? 0;
  const hi = edges[bins] ?? 1;
  const span = hi - lo || 1;
  const max = maxFraction(series);
  const xOf = (value: number) => area.x0 + ((value - lo) / span) * area.width;
  const yOf = (fraction: number) => area.y0 + area.height - (fraction / max) * area.height;

  for (const { label, distribution } of series) {
    if (distribution.kind !== "numerical") continue;
    const floor = area.y0 + area.height;
    const points: string[] = [`${xOf(lo)},${floor}`];
    for (let bin = 0; bin < bins; bin += 1) {
      const left = edges[bin] ?? lo;
      const right = edges[bin + 1] ?? hi;
      const middle = (left + right) / 2;
      const fraction = distribution.fractions[bin] ?? 0;
      points.push(`${xOf(middle)},${yOf(fraction)}`);
    }
    points.push(`${xOf(hi)},${floor}`);
    root.append(
      svg("polygon", {
        points: points.join(" "),
        fill: subsetColor(label),
        "fill-opacity": 0.18,
        stroke: subsetColor(label),
        "stroke-width": 1.5,
        class: "series",
        "data-subset": label,
      }),
    );
    for (let bin = 0; bin < bins; bin += 1) {
      const left = edges[bin] ?? lo;
      const right = edges[bin + 1] ?? hi;
      const fraction = distribution.fractions[bin] ?? 0;
      root.append(
        svg("circle", {
          cx: xOf((left + right) / 2),
          cy: yOf(fraction),
          r: CHART.markerRadius,
          fill: subsetColor(label),
          class: "mark marker",
          "data-subset": label,
          "data-bin": bin,
          "data-value": String(fraction),
        }),
      );
    }
  }

  root.append(
    svg("text", {
      x: area.x0,
      y: CHART.height - 8,
      class: "axis-text",
      text: fmtBound(lo),
    }),
    svg("text", {
      x: area.x0 + area.width,
      y: CHART.height - 8,
      class: "axis-text",
      "text-anchor": "end",
      text: fmtBound(hi),
    }),
  );
  return root;
}

export function distributionChart(series: Series[]): SVGSVGElement {
  const first = series[0];
  if (first !== undefined && first.distribution.kind === "categorical") {
    return categoricalChart(series);
  }
  return numericalChart(series);
}

/**
 * Number-line glyph for one association value: a dot on a fixed axis.
 * Pearson values live on [-1, 1] (with a zero tick); the other measures
 * on [0, 1].
 */
export function numberLineGlyph(value: number, signed: boolean): SVGSVGElement {
  const root = svg("svg", {
    viewBox: `0 0 ${GLYPH.width} ${GLYPH.height}`,
    width: GLYPH.width,
    height: GLYPH.height,
    class: "glyph",
  });
  const lo = signed ? -1 : 0;
  const usable = GLYPH.width - 2 * GLYPH.padX;
  const xOf = (v: number) => GLYPH.padX + ((v - lo) / (1 - lo)) * usable;
  const mid = GLYPH.height / 2;
  root.append(
    svg("line", { x1: GLYPH.padX, y1: mid, x2: GLYPH.width - GLYPH.padX, y2: mid, class: "axis-line" }),
  );
  if (signed) {
    root.append(
      svg("line", { x1: xOf(0), y1: mid - 4, x2: xOf(0), y2: mid + 4, class: "axis-line" }),
    );
  }
  root.append(
    svg("circle", {
      cx: xOf(Math.max(lo, Math.min(1, value))),
      cy: mid,
      r: GLYPH.dotRadius,
      class: "glyph-dot",
      "data-value": String(value),
    }),
  );
  return root;
}

/**
 * Subset-by-bucket heat grid for a selected feature: one row per visible
 * subset, one column per category or bin, cell opacity proportional to
 * the subset's fraction in that bucket.
 */
export function heatGrid(
  labels: string[],
  buckets: string[],
  fractions: Record<string, number[]>,
): SVGSVGElement {
  let max = 0;
  for (const label of labels) {
    for (const fraction of fractions[label] ?? []) {
      if (fraction > max) max = fraction;
    }
  }
  if (max === 0) max = 1;
  const width = HEAT.labelWidth + buckets.length * (HEAT.cell + HEAT.gap);
  const height = labels.length * (HEAT.cell + HEAT.gap) + HEAT.labelHeight;
  const root = svg("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width,
    height,
    class: "chart heat",
  });
  labels.forEach((label, row) => {
    const y = row * (HEAT.cell + HEAT.gap);
    root.append(
      svg("text", {
        x: HEAT.labelWidth - 6,
        y: y + HEAT.cell / 2 + 4,
        class: "axis-text",
        "text-anchor": "end",
        text: label,
      }),
    );
    buckets.forEach((bucket, column) => {
      const fraction = fractions[label]?.[column] ?? 0;
      root.append(
        svg("rect", {
          x: HEAT.labelWidth + column * (HEAT.cell + HEAT.gap),
          y,
          width: HEAT.cell,
          height: HEAT.cell,
          fill: subsetColor(label),
          "fill-opacity": (0.08 + 0.92 * (fraction / max)).toFixed(4),
          class: "mark cell",
          "data-subset": label,
          "data-bucket": bucket,
          "data-value": String(fraction),
        }),
      );
    });
  });
  buckets.forEach((bucket, column) => {
    root.append(
      svg("text", {
        x: HEAT.labelWidth + column * (HEAT.cell + HEAT.gap) + HEAT.cell / 2,
        y: height - 4,
        class: "axis-text heat-bucket",
        "text-anchor": "middle",
        text: bucket,
      }),
    );
  });
  return root;
}

/**
 * Attach a horizontal brush to a numerical chart. Dragging selects a
 * value range; the callback receives it live, and the selection survives
 * until the next drag (a rejected filter keeps the brush on screen).
 */
export function attachBrush(
  root: SVGSVGElement,
  domain: [number, number],
  onBrush: (lo: number, hi: number) => void,
): void {
  const area = plotArea();
  const [lo, hi] = domain;
  const span = hi - lo || 1;
  const valueOf = (clientX: number, rect: DOMRect) => {
    const relative = ((clientX - rect.left) / rect.width) * CHART.width;
    const clamped = Math.max(area.x0, Math.min(area.x0 + area.width, relative));
    return lo + ((clamped - area.x0) / area.width) * span;
  };
  const overlay = svg("rect", {
    x: area.x0,
    y: area.y0,
    width: 0,
    height: area.height,
    class: "brush-overlay",
    visibility: "hidden",
  });
  root.append(overlay);

  let anchor: number | null = null;
  root.addEventListener("pointerdown", (event) => {
    const rect = root.getBoundingClientRect();
    anchor = valueOf(event.clientX, rect);
  });
  root.addEventListener("pointermove", (event) => {
    if (anchor === null) return;
    const rect = root.getBoundingClientRect();
    const current = valueOf(event.clientX, rect);
    const from = Math.min(anchor, current);
    const to = Math.max(anchor, current);
    overlay.setAttribute("visibility", "visible");
    overlay.setAttribute("x", String(area.x0 + ((from - lo) / span) * area.width));
    overlay.setAttribute("width", String(((to - from) / span) * area.width));
    onBrush(from, to);
  });
  root.addEventListener("pointerup", (event) => {
    if (anchor === null) return;
    const rect = root.getBoundingClientRect();
    const current = valueOf(event.clientX, rect);
    onBrush(Math.min(anchor, current), Math.max(anchor, current));
    anchor = null;
  });
}
