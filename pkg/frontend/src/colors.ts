/** Fixed subset color scheme, consistent across every view:
 * included green, counterfactual orange, excluded purple. The undivided
 * complement shown when the counterfactual split is toggled off reuses
 * the excluded purple. */

export const SUBSET_COLORS: Record<string, string> = {
  in: "#2e9e5b",
  cf: "#e8821c",
  ex: "#7a5bc7",
  ex_control: "#7a5bc7",
};

export const SUBSET_ORDER = ["in", "cf", "ex", "ex_control"];

export function subsetColor(label: string): string {
  return SUBSET_COLORS[label] ?? "#8a8f98";
}

/** Visible subsets of a snapshot in canonical display order. */
export function orderedLabels(labels: Iterable<string>): string[] {
  const present = new Set(labels);
  const ordered = SUBSET_ORDER.filter((label) => present.has(label));
  for (const label of present) {
    if (!ordered.includes(label)) ordered.push(label);
  }
  return ordered;
}
