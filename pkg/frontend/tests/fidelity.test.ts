/**
 * UI fidelity against recorded API responses, for both demo scenarios
 * (sex=Female strong, v_decile_score 6..10 weak): the strength badge,
 * subset fractions, and every plotted value must equal the corresponding
 * snapshot field, and toggling the counterfactual view off must collapse
 * the display to exactly the in and ex_control series.
 */

import { describe, expect, it } from "vitest";

import type { Snapshot } from "../src/api.js";
import { ScenarioLabel, fixtureText, mountExplorer, scenario } from "./helpers.js";

function checkBadge(root: HTMLElement, snapshot: Snapshot): void {
  const badge = root.querySelector(".strength-badge");
  if (snapshot.strength === null) {
    expect(badge).toBeNull();
    return;
  }
  expect(badge).not.toBeNull();
  expect(Number(badge!.getAttribute("data-d"))).toBe(snapshot.strength.d);
  expect(badge!.getAttribute("data-strength")).toBe(snapshot.strength.strength);
  expect(badge!.getAttribute("data-measure")).toBe(snapshot.strength.measure);
  expect(badge!.textContent).toContain(snapshot.strength.strength);
}

function checkSubsetFractions(root: HTMLElement, snapshot: Snapshot): void {
  const labels = Object.keys(snapshot.subsets);
  const segments = root.querySelectorAll(".size-panel [data-subset][data-count]");
  expect(segments.length).toBe(labels.length);
  for (const [label, info] of Object.entries(snapshot.subsets)) {
    const segment = root.querySelector(`.size-panel [data-subset="${label}"][data-count]`)!;
    expect(Number(segment.getAttribute("data-value"))).toBe(info.fraction);
    expect(Number(segment.getAttribute("data-count"))).toBe(info.count);
    const entry = root.querySelector(`.size-legend [data-subset="${label}"]`)!;
    expect(Number(entry.getAttribute("data-value"))).toBe(info.fraction);
  }
}

/** Every mark in a chart box must match the distribution it claims to plot. */
function checkDistributionMarks(
  box: Element,
  distributions: Record<string, Snapshot["outcome_distributions"][string]>,
): void {
  const marks = box.querySelectorAll("[data-subset][data-category], [data-subset][data-bin]");
  expect(marks.length).toBeGreaterThan(0);
  for (const mark of marks) {
    const label = mark.getAttribute("data-subset")!;
    const dist = distributions[label];
    expect(dist).toBeDefined();
    const value = Number(mark.getAttribute("data-value"));
    if (dist!.kind === "categorical") {
      const index = dist!.categories.indexOf(mark.getAttribute("data-category")!);
      expect(index).toBeGreaterThanOrEqual(0);
      expect(value).toBe(dist!.fractions[index]);
    } else {
      expect(value).toBe(dist!.fractions[Number(mark.getAttribute("data-bin"))]);
    }
  }
  for (const [label, dist] of Object.entries(distributions)) {
    const count = box.querySelectorAll(
      `[data-subset="${label}"][data-category], [data-subset="${label}"][data-bin]`,
    ).length;
    expect(count).toBe(dist.fractions.length);
  }
}

function checkOutcome(root: HTMLElement, snapshot: Snapshot): void {
  checkDistributionMarks(
    root.querySelector(".outcome-chart")!,
    snapshot.outcome_distributions,
  );
}

function checkAssociations(root: HTMLElement, snapshot: Snapshot): void {
  const rows = root.querySelectorAll(".assoc-box tbody tr");
  expect(rows.length).toBe(snapshot.associations.length);
  for (const entry of snapshot.associations) {
    const row = root.querySelector(`[data-feature="${entry.feature}"]`)!;
    const cells = row.querySelectorAll("td[data-subset]");
    expect(cells.length).toBe(Object.keys(entry.values).length);
    for (const cell of cells) {
      const value = entry.values[cell.getAttribute("data-subset")!];
      if (value === null || value === undefined) {
        expect(cell.textContent).toBe("n/a");
        expect(cell.hasAttribute("data-value")).toBe(false);
      } else {
        expect(Number(cell.getAttribute("data-value"))).toBe(value);
        const dot = cell.querySelector("[data-value]")!;
        expect(Number(dot.getAttribute("data-value"))).toBe(value);
      }
    }
  }
}

function checkDetail(root: HTMLElement, snapshot: Snapshot): void {
  const detail = snapshot.feature_detail!;
  checkDistributionMarks(root.querySelector(".detail-distributions")!, detail.distributions);
  const grid = root.querySelector(".detail-pairing")!;
  for (const label of detail.pairing.labels) {
    const values = [...grid.querySelectorAll(`[data-subset="${label}"][data-bucket]`)].map(
      (cell) => Number(cell.getAttribute("data-value")),
    );
    expect(values).toEqual(detail.pairing.fractions[label]);
  }
}

function subsetLabelsOnScreen(root: HTMLElement): string[] {
  const labels = new Set(
    [...root.querySelectorAll("[data-subset]")].map((node) => node.getAttribute("data-subset")!),
  );
  return [...labels].sort();
}

const CHIP_TEXT: Record<ScenarioLabel, string> = {
  strong: "sex=Female",
  weak: "v_decile_score:6..10",
};

describe.each(["strong", "weak"] as const)("%s scenario", (label) => {
  it("renders badge, subset fractions, and every plotted value from the snapshot", async () => {
    const s = scenario(label);
    const { view, root } = mountExplorer(s);
    await view.applyConstraint(s.constraint);

    expect(root.querySelector(".strength-badge")!.getAttribute("data-strength")).toBe(label);
    checkBadge(root, s.pushed);
    checkSubsetFractions(root, s.pushed);
    checkOutcome(root, s.pushed);
    checkAssociations(root, s.pushed);

    const chips = root.querySelectorAll(".chip");
    expect(chips.length).toBe(1);
    expect(chips[0]!.getAttribute("data-column")).toBe(s.constraint.column);
    expect(chips[0]!.textContent).toContain(CHIP_TEXT[label]);
  });

  it("renders the feature detail panel from feature_detail", async () => {
    const s = scenario(label);
    const { view, root } = mountExplorer(s);
    await view.applyConstraint(s.constraint);
    await view.selectFeature(s.detailFeature);

    expect(root.querySelector(".detail-box h2")!.textContent).toContain(s.detailFeature);
    checkDetail(root, s.detail);
    checkBadge(root, s.detail);
    checkAssociations(root, s.detail);
  });

  it("collapses to exactly in and ex_control when the counterfactual view is off", async () => {
    const s = scenario(label);
    const { view, root } = mountExplorer(s);
    await view.applyConstraint(s.constraint);
    await view.selectFeature(s.detailFeature);

    await view.setCounterfactualVisible(false);
    expect(subsetLabelsOnScreen(root)).toEqual(["ex_control", "in"]);
    expect(root.querySelector(".strength-badge")).toBeNull();
    checkSubsetFractions(root, s.controlDetail);
    checkOutcome(root, s.controlDetail);
    checkAssociations(root, s.controlDetail);
    checkDetail(root, s.controlDetail);
    expect(root.querySelectorAll(".chip").length).toBe(1);

    await view.setCounterfactualVisible(true);
    expect(subsetLabelsOnScreen(root)).toEqual(["cf", "ex", "in"]);
    checkBadge(root, s.detail);
    checkSubsetFractions(root, s.detail);
  });
});

describe("rejected filter", () => {
  it("shows a non-destructive toast and preserves the brush bounds", async () => {
    const s = scenario("strong");
    const { view, root } = mountExplorer(s);
    await view.applyConstraint(s.constraint);
    await view.pickFilterColumn("age");

    const lo = root.querySelector(".bound-lo") as HTMLInputElement;
    const hi = root.querySelector(".bound-hi") as HTMLInputElement;
    lo.value = "1000";
    hi.value = "2000";

    s.server.route(
      "POST",
      `/sessions/${s.create.id}/filters`,
      fixtureText("err_empty_included"),
      422,
      (body) => body.includes('"age"'),
    );
    await view.applyConstraint({ column: "age", range: [1000, 2000] });

    const toast = root.querySelector(".toast")!;
    expect(toast.hasAttribute("hidden")).toBe(false);
    expect(toast.getAttribute("data-code")).toBe("EmptyIncluded");
    expect(toast.textContent).toContain("filter stack matches no rows");
    expect(lo.value).toBe("1000");
    expect(hi.value).toBe("2000");
    expect(root.querySelectorAll(".chip").length).toBe(1);
    checkBadge(root, s.pushed);

    await view.selectFeature("age");
    expect(toast.hasAttribute("hidden")).toBe(true);
  });
});

describe("chip removal", () => {
  it("restores the unfiltered view when the only chip is removed", async () => {
    const s = scenario("strong");
    const { view, root } = mountExplorer(s);
    await view.applyConstraint(s.constraint);
    expect(root.querySelectorAll(".chip").length).toBe(1);

    await view.removeFilter("sex");
    expect(root.querySelectorAll(".chip").length).toBe(0);
    expect(root.querySelector(".strength-badge")).toBeNull();
    checkSubsetFractions(root, s.create.snapshot);
    checkOutcome(root, s.create.snapshot);
  });
});
