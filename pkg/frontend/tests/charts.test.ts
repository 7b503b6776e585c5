/** Unit tests for the SVG chart builders and shared formatting helpers. */

import { describe, expect, it } from "vitest";

import { constraintLabel } from "../src/api.js";
import {
  categoricalChart,
  heatGrid,
  numberLineGlyph,
  numericalChart,
  sizeBars,
} from "../src/charts.js";
import { SUBSET_COLORS, orderedLabels, subsetColor } from "../src/colors.js";
import { fmt4, fmtBound, fmtCount, fmtPercent } from "../src/format.js";

const CATEGORICAL = {
  kind: "categorical" as const,
  categories: ["no", "yes"],
  counts: [3, 1],
  fractions: [0.75, 0.25],
  n: 4,
};

const NUMERICAL = {
  kind: "numerical" as const,
  bin_edges: [0, 5, 10],
  counts: [2, 6],
  fractions: [0.25, 0.75],
  n: 8,
  min: 1,
  max: 9,
  mean: 6,
};

describe("sizeBars", () => {
  it("renders one proportional segment per subset with exact values", () => {
    const chart = sizeBars([
      { label: "in", count: 10, fraction: 0.5 },
      { label: "cf", count: 5, fraction: 0.25 },
      { label: "ex", count: 5, fraction: 0.25 },
    ]);
    const segments = [...chart.querySelectorAll("[data-subset]")];
    expect(segments.map((s) => s.getAttribute("data-subset"))).toEqual(["in", "cf", "ex"]);
    expect(segments.map((s) => s.getAttribute("data-value"))).toEqual(["0.5", "0.25", "0.25"]);
    expect(segments.map((s) => s.getAttribute("data-count"))).toEqual(["10", "5", "5"]);
    // widths are fraction-proportional after the fixed 1px separator
    const widths = segments.map((s) => Number(s.getAttribute("width")) + 1);
    expect(widths[0]).toBeCloseTo(2 * widths[1]!, 6);
    expect(segments[0]!.getAttribute("fill")).toBe(SUBSET_COLORS["in"]!);
  });
});

describe("categoricalChart", () => {
  it("scales bar heights by fraction and tags each bar", () => {
    const chart = categoricalChart([
      { label: "in", distribution: CATEGORICAL },
      { label: "ex", distribution: { ...CATEGORICAL, fractions: [0.5, 0.5] } },
    ]);
    const bars = [...chart.querySelectorAll("[data-category]")];
    expect(bars.length).toBe(4);
    const barFor = (label: string, category: string) =>
      bars.find(
        (b) =>
          b.getAttribute("data-subset") === label && b.getAttribute("data-category") === category,
      )!;
    expect(Number(barFor("in", "no").getAttribute("data-value"))).toBe(0.75);
    expect(Number(barFor("in", "yes").getAttribute("data-value"))).toBe(0.25);
    const tall = Number(barFor("in", "no").getAttribute("height"));
    const short = Number(barFor("in", "yes").getAttribute("height"));
    expect(tall).toBeCloseTo(3 * short, 6);
  });
});

describe("numericalChart", () => {
  it("draws one area per series and one marker per bin", () => {
    const chart = numericalChart([
      { label: "in", distribution: NUMERICAL },
      { label: "cf", distribution: { ...NUMERICAL, fractions: [0.75, 0.25] } },
    ]);
    expect(chart.querySelectorAll("polygon").length).toBe(2);
    const markers = [...chart.querySelectorAll("[data-bin]")];
    expect(markers.length).toBe(4);
    const inMarkers = markers.filter((m) => m.getAttribute("data-subset") === "in");
    expect(inMarkers.map((m) => m.getAttribute("data-value"))).toEqual(["0.25", "0.75"]);
  });
});

describe("heatGrid", () => {
  it("lays out one tagged cell per subset and bucket", () => {
    const grid = heatGrid(["in", "cf"], ["a", "b", "c"], {
      in: [0.2, 0.3, 0.5],
      cf: [0.5, 0.25, 0.25],
    });
    const cells = [...grid.querySelectorAll("[data-bucket]")];
    expect(cells.length).toBe(6);
    const inValues = cells
      .filter((c) => c.getAttribute("data-subset") === "in")
      .map((c) => Number(c.getAttribute("data-value")));
    expect(inValues).toEqual([0.2, 0.3, 0.5]);
    const densest = cells.find(
      (c) => c.getAttribute("data-subset") === "in" && c.getAttribute("data-bucket") === "c",
    )!;
    expect(densest.getAttribute("fill-opacity")).toBe("1.0000");
  });
});

describe("numberLineGlyph", () => {
  it("uses a unit domain for unsigned measures", () => {
    const glyph = numberLineGlyph(0, false);
    expect(glyph.querySelectorAll("line").length).toBe(1);
    const dot = glyph.querySelector("circle")!;
    expect(Number(dot.getAttribute("cx"))).toBeCloseTo(5, 6);
  });

  it("centers zero on the signed domain", () => {
    const glyph = numberLineGlyph(0, true);
    expect(glyph.querySelectorAll("line").length).toBe(2);
    const dot = glyph.querySelector("circle")!;
    expect(Number(dot.getAttribute("cx"))).toBeCloseTo(48, 6);
  });

  it("clamps out-of-domain values but keeps the exact data-value", () => {
    const glyph = numberLineGlyph(1.5, false);
    const dot = glyph.querySelector("circle")!;
    expect(Number(dot.getAttribute("cx"))).toBeCloseTo(91, 6);
    expect(Number(dot.getAttribute("data-value"))).toBe(1.5);
  });
});

describe("colors", () => {
  it("orders subsets canonically and appends unknown labels", () => {
    expect(orderedLabels(["ex", "in", "cf"])).toEqual(["in", "cf", "ex"]);
    expect(orderedLabels(["ex_control", "in"])).toEqual(["in", "ex_control"]);
    expect(orderedLabels(["zzz", "in"])).toEqual(["in", "zzz"]);
  });

  it("keeps the fixed scheme: in green, cf orange, ex purple", () => {
    expect(subsetColor("in")).toBe("#2e9e5b");
    expect(subsetColor("cf")).toBe("#e8821c");
    expect(subsetColor("ex")).toBe("#7a5bc7");
    expect(subsetColor("ex_control")).toBe(subsetColor("ex"));
  });
});

describe("format", () => {
  it("formats statistics, percentages, counts, and bounds", () => {
    expect(fmt4(0.65051205)).toBe("0.6505");
    expect(fmtPercent(0.35266666)).toBe("35.27%");
    expect(fmtCount(1500)).toBe("1,500");
    expect(fmtBound(6)).toBe("6");
    expect(fmtBound(20.1)).toBe("20.1");
    expect(fmtBound(1234.5)).toBe("1.23e+3");
    expect(fmtBound(0.0005)).toBe("5.00e-4");
  });
});

describe("constraintLabel", () => {
  it("renders ranges and sorted category sets", () => {
    expect(constraintLabel({ column: "age", range: [18, 30] })).toBe("age:18..30");
    expect(constraintLabel({ column: "age", range: [null, 8] })).toBe("age:..8");
    expect(constraintLabel({ column: "age", range: [3, null] })).toBe("age:3..");
    expect(constraintLabel({ column: "sex", categories: ["b", "a"] })).toBe("sex=a|b");
  });
});
