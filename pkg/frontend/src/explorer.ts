/**
 * Exploration view: filter chips, subset size bar, strength badge,
 * overlaid outcome distributions, a sortable per-subset association
 * table, and a feature detail panel.
 *
 * The view renders only confirmed snapshots. Every number on screen is
 * copied verbatim from an API snapshot field and tagged with its exact
 * value in a data-value attribute; nothing is computed locally.
 */

import {
  ApiClient,
  ApiError,
  AssociationEntry,
  Constraint,
  DatasetManifest,
  Mode,
  SessionCreated,
  Snapshot,
  constraintLabel,
  isCategorical,
} from "./api.js";
import {
  attachBrush,
  distributionChart,
  heatGrid,
  numberLineGlyph,
  sizeBars,
} from "./charts.js";
import { orderedLabels, subsetColor } from "./colors.js";
import { clear, el } from "./dom.js";
import { fmt4, fmtBound, fmtCount, fmtPercent } from "./format.js";

export type SortDirection = "asc" | "desc";

/** What the user is looking at; the session itself lives on the server. */
export interface ViewState {
  datasetId: string;
  sessionId: string;
  selectedFeature: string | null;
  sortLabel: string | null;
  sortDirection: SortDirection;
  sortByMagnitude: boolean;
  counterfactualVisible: boolean;
}

function legendEntry(label: string, text: string, value: number): HTMLElement {
  return el("span", { class: "legend-entry", "data-subset": label, "data-value": String(value) }, [
    el("span", {
      class: "swatch",
      style: `background:${subsetColor(label)}`,
    }),
    ` ${text}`,
  ]);
}

function binLabels(edges: number[]): string[] {
  const labels: string[] = [];
  for (let i = 0; i + 1 < edges.length; i += 1) {
    labels.push(`${fmtBound(edges[i] ?? 0)}..${fmtBound(edges[i + 1] ?? 0)}`);
  }
  return labels;
}

export class ExplorerView {
  readonly state: ViewState;
  private snapshot: Snapshot;

  private readonly toastBox: HTMLElement;
  private readonly chipsBox: HTMLElement;
  private readonly builderBox: HTMLElement;
  private readonly builderControls: HTMLElement;
  private readonly sizeBox: HTMLElement;
  private readonly badgeBox: HTMLElement;
  private readonly outcomeBox: HTMLElement;
  private readonly tableBox: HTMLElement;
  private readonly detailBox: HTMLElement;
  private readonly cfToggle: HTMLInputElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
    private readonly manifest: DatasetManifest,
    private readonly outcome: string,
    created: SessionCreated,
  ) {
    this.snapshot = created.snapshot;
    this.state = {
      datasetId: manifest.id,
      sessionId: created.id,
      selectedFeature: null,
      sortLabel: null,
      sortDirection: "desc",
      sortByMagnitude: false,
      counterfactualVisible: created.snapshot.mode === "counterfactual",
    };

    this.toastBox = el("div", { class: "toast", role: "alert", hidden: true });
    this.chipsBox = el("div", { class: "chips" });
    this.builderControls = el("div", { class: "builder-controls" });
    this.builderBox = this.buildBuilder();
    this.sizeBox = el("div", { class: "size-panel" });
    this.badgeBox = el("span", { class: "badge-slot" });
    this.outcomeBox = el("div", { class: "outcome-chart" });
    this.tableBox = el("div", { class: "assoc-box" });
    this.detailBox = el("div", { class: "detail-box" });

    this.cfToggle = el("input", { type: "checkbox", id: "cf-toggle" });
    this.cfToggle.checked = this.state.counterfactualVisible;
    this.cfToggle.addEventListener("change", () => {
      void this.setCounterfactualVisible(this.cfToggle.checked);
    });

    root.append(
      el("section", { class: "explorer" }, [
        el("header", { class: "explorer-header" }, [
          el("h1", { text: manifest.name }),
          el("p", {
            class: "session-info",
            text: `outcome: ${outcome} · ${fmtCount(this.snapshot.n_rows)} rows`,
          }),
          el("label", { class: "cf-toggle-label", for: "cf-toggle" }, [
            this.cfToggle,
            " show counterfactual split",
          ]),
        ]),
        this.toastBox,
        el("div", { class: "filter-row" }, [this.chipsBox, this.builderBox]),
        this.sizeBox,
        el("div", { class: "panels" }, [
          el("div", { class: "panel outcome-panel" }, [
            el("h2", { text: "outcome distributions" }),
            this.badgeBox,
            this.outcomeBox,
          ]),
          el("div", { class: "panel assoc-panel" }, [
            el("h2", { text: "associations with outcome" }),
            this.tableBox,
          ]),
          el("div", { class: "panel detail-panel" }, [this.detailBox]),
        ]),
      ]),
    );
    this.rerender();
  }

  /** Push a filter; on rejection show a toast and leave everything as is. */
  async applyConstraint(constraint: Constraint): Promise<void> {
    try {
      let snapshot = await this.client.pushFilter(this.state.sessionId, constraint);
      if (this.state.selectedFeature !== null) {
        snapshot = await this.client.snapshot(this.state.sessionId, this.state.selectedFeature);
      }
      this.confirm(snapshot);
    } catch (error) {
      this.surface(error);
    }
  }

  /** Pop the filter on a column (chip removal). */
  async removeFilter(column: string): Promise<void> {
    try {
      let snapshot = await this.client.popFilter(this.state.sessionId, column);
      if (this.state.selectedFeature !== null) {
        snapshot = await this.client.snapshot(this.state.sessionId, this.state.selectedFeature);
      }
      this.confirm(snapshot);
    } catch (error) {
      this.surface(error);
    }
  }

  /** Select an association row's feature and load its detail panel. */
  async selectFeature(feature: string | null): Promise<void> {
    if (feature !== null && !this.manifest.columns.some((c) => c.name === feature)) return;
    try {
      const snapshot = await this.client.snapshot(this.state.sessionId, feature ?? undefined);
      this.state.selectedFeature = feature;
      this.confirm(snapshot);
    } catch (error) {
      this.surface(error);
    }
  }

  /**
   * Map the counterfactual toggle onto the session mode: recreate the
   * session in the other mode and replay the current filter stack, so the
   * server, not the UI, decides which subsets exist.
   */
  async setCounterfactualVisible(visible: boolean): Promise<void> {
    if (visible === this.state.counterfactualVisible) return;
    const mode: Mode = visible ? "counterfactual" : "control";
    try {
      const created = await this.client.createSession(this.state.datasetId, this.outcome, mode);
      let snapshot = created.snapshot;
      for (const constraint of this.snapshot.filters) {
        snapshot = await this.client.pushFilter(created.id, constraint);
      }
      if (this.state.selectedFeature !== null) {
        snapshot = await this.client.snapshot(created.id, this.state.selectedFeature);
      }
      this.state.sessionId = created.id;
      this.state.counterfactualVisible = visible;
      this.confirm(snapshot);
    } catch (error) {
      this.cfToggle.checked = this.state.counterfactualVisible;
      this.surface(error);
    }
  }

  setSort(label: string): void {
    if (this.state.sortLabel === label) {
      this.state.sortDirection = this.state.sortDirection === "desc" ? "asc" : "desc";
    } else {
      this.state.sortLabel = label;
      this.state.sortDirection = "desc";
    }
    this.renderTable();
  }

  setMagnitude(on: boolean): void {
    this.state.sortByMagnitude = on;
    this.renderTable();
  }

  private confirm(snapshot: Snapshot): void {
    this.snapshot = snapshot;
    this.clearToast();
    this.rerender();
  }

  private labels(): string[] {
    return orderedLabels(Object.keys(this.snapshot.subsets));
  }

  private rerender(): void {
    this.renderChips();
    this.renderSizes();
    this.renderBadge();
    this.renderOutcome();
    this.renderTable();
    this.renderDetail();
    this.cfToggle.checked = this.state.counterfactualVisible;
  }

  private renderChips(): void {
    clear(this.chipsBox);
    for (const constraint of this.snapshot.filters) {
      const remove = el("button", { class: "chip-remove", title: "remove filter", text: "×" });
      remove.addEventListener("click", () => {
        void this.removeFilter(constraint.column);
      });
      this.chipsBox.append(
        el("span", { class: "chip", "data-column": constraint.column }, [
          constraintLabel(constraint),
          remove,
        ]),
      );
    }
  }

  private renderSizes(): void {
    clear(this.sizeBox);
    const labels = this.labels();
    const subsets = this.snapshot.subsets;
    this.sizeBox.append(
      sizeBars(labels.map((label) => ({ label, ...subsets[label]! }))),
      el(
        "div",
        { class: "legend size-legend" },
        labels.map((label) => {
          const info = subsets[label]!;
          return legendEntry(
            label,
            `${label} ${fmtCount(info.count)} (${fmtPercent(info.fraction)})`,
            info.fraction,
          );
        }),
      ),
    );
  }

  private renderBadge(): void {
    clear(this.badgeBox);
    const report = this.snapshot.strength;
    if (report === null) return;
    this.badgeBox.append(
      el("span", {
        class: `strength-badge strength-${report.strength}`,
        "data-d": String(report.d),
        "data-measure": report.measure,
        "data-strength": report.strength,
        text: `${report.strength} · d = ${fmt4(report.d)}`,
      }),
    );
  }

  private renderOutcome(): void {
    clear(this.outcomeBox);
    const labels = this.labels();
    const distributions = this.snapshot.outcome_distributions;
    this.outcomeBox.append(
      el(
        "div",
        { class: "legend" },
        labels.map((label) => legendEntry(label, label, distributions[label]?.n ?? 0)),
      ),
      distributionChart(
        labels.map((label) => ({ label, distribution: distributions[label]! })),
      ),
    );
  }

  private sortedAssociations(): AssociationEntry[] {
    const { sortLabel, sortDirection, sortByMagnitude } = this.state;
    const entries = [...this.snapshot.associations];
    if (sortLabel === null) return entries;
    const sign = sortDirection === "asc" ? 1 : -1;
    const key = (entry: AssociationEntry): number | null => {
      const value = entry.values[sortLabel];
      if (value === null || value === undefined) return null;
      return sortByMagnitude ? Math.abs(value) : value;
    };
    entries.sort((a, b) => {
      const ka = key(a);
      const kb = key(b);
      if (ka === null && kb === null) return 0;
      if (ka === null) return 1;
      if (kb === null) return -1;
      return (ka - kb) * sign;
    });
    return entries;
  }

  private renderTable(): void {
    clear(this.tableBox);
    const labels = this.labels();

    const magnitude = el("input", { type: "checkbox", id: "magnitude-toggle" });
    magnitude.checked = this.state.sortByMagnitude;
    magnitude.addEventListener("change", () => {
      this.setMagnitude(magnitude.checked);
    });

    const headerCells = labels.map((label) => {
      const active = this.state.sortLabel === label;
      const arrow = active ? (this.state.sortDirection === "asc" ? " ▲" : " ▼") : "";
      const button = el("button", {
        class: "sort-btn",
        "data-label": label,
        text: label + arrow,
      });
      button.addEventListener("click", () => {
        this.setSort(label);
      });
      return el("th", { class: "subset-col", "data-subset": label }, [button]);
    });

    const body = el("tbody");
    for (const entry of this.sortedAssociations()) {
      const row = el("tr", {
        class: `assoc-row${entry.feature === this.state.selectedFeature ? " selected" : ""}`,
        "data-feature": entry.feature,
      });
      row.addEventListener("click", () => {
        void this.selectFeature(entry.feature);
      });
      row.append(
        el("td", { class: "feature-cell", text: entry.feature }),
        el("td", { class: "method-cell", text: entry.method }),
      );
      for (const label of labels) {
        const value = entry.values[label];
        if (value === null || value === undefined) {
          row.append(el("td", { class: "value-cell null", "data-subset": label, text: "n/a" }));
        } else {
          row.append(
            el("td", { class: "value-cell", "data-subset": label, "data-value": String(value) }, [
              numberLineGlyph(value, entry.method === "pearson"),
              el("span", { class: "value-text", text: fmt4(value) }),
            ]),
          );
        }
      }
      body.append(row);
    }

    this.tableBox.append(
      el("label", { class: "magnitude-label", for: "magnitude-toggle" }, [
        magnitude,
        " sort by magnitude",
      ]),
      el("table", { class: "assoc-table" }, [
        el("thead", {}, [
          el("tr", {}, [
            el("th", { text: "feature" }),
            el("th", { text: "method" }),
            ...headerCells,
          ]),
        ]),
        body,
      ]),
    );
  }

  private renderDetail(): void {
    clear(this.detailBox);
    const detail = this.snapshot.feature_detail;
    if (detail === null) {
      this.detailBox.append(
        el("p", { class: "detail-hint", text: "click an association row to inspect a feature" }),
      );
      return;
    }
    const labels = orderedLabels(detail.pairing.labels);
    const buckets = detail.pairing.categories ?? binLabels(detail.pairing.bin_edges ?? []);
    this.detailBox.append(
      el("h2", { text: `feature: ${detail.feature}` }),
      el(
        "div",
        { class: "legend" },
        labels.map((label) => legendEntry(label, label, detail.distributions[label]?.n ?? 0)),
      ),
      el("div", { class: "detail-distributions" }, [
        distributionChart(
          labels.map((label) => ({ label, distribution: detail.distributions[label]! })),
        ),
      ]),
      el("div", { class: "detail-pairing" }, [
        el("h3", { text: `${detail.feature} by subset` }),
        heatGrid(labels, buckets, detail.pairing.fractions),
      ]),
    );
  }

  /** Filter builder: pick a column, brush or tick values, apply. */
  private buildBuilder(): HTMLElement {
    const select = el("select", { id: "builder-column" });
    select.append(el("option", { value: "", text: "add filter…" }));
    for (const column of this.manifest.columns) {
      if (column.name === this.outcome) continue;
      select.append(el("option", { value: column.name, text: column.name }));
    }
    select.addEventListener("change", () => {
      if (select.value !== "") void this.pickFilterColumn(select.value);
    });
    return el("div", { class: "builder" }, [select, this.builderControls]);
  }

  /** Load a column's summary into the builder: brushable chart or category list. */
  async pickFilterColumn(column: string): Promise<void> {
    try {
      const summary = await this.client.columnSummary(this.state.datasetId, column);
      clear(this.builderControls);
      const apply = el("button", { class: "apply-btn", text: "Filter" });

      if (isCategorical(summary.kind)) {
        const boxes: HTMLInputElement[] = [];
        const list = el("div", { class: "category-list" });
        for (const category of summary.categories ?? []) {
          const box = el("input", { type: "checkbox", value: category });
          boxes.push(box);
          list.append(el("label", { class: "category-option" }, [box, ` ${category}`]));
        }
        apply.addEventListener("click", () => {
          const chosen = boxes.filter((b) => b.checked).map((b) => b.value);
          void this.applyConstraint({ column, categories: chosen });
        });
        this.builderControls.append(list, apply);
        return;
      }

      const lo = el("input", { type: "number", class: "bound-lo", placeholder: "min" });
      const hi = el("input", { type: "number", class: "bound-hi", placeholder: "max" });
      const chart = distributionChart([{ label: column, distribution: summary.distribution }]);
      if (summary.distribution.kind === "numerical") {
        const edges = summary.distribution.bin_edges;
        const first = edges[0];
        const last = edges[edges.length - 1];
        if (first !== undefined && last !== undefined) {
          attachBrush(chart, [first, last], (from, to) => {
            lo.value = String(from);
            hi.value = String(to);
          });
        }
      }
      apply.addEventListener("click", () => {
        void this.applyConstraint({
          column,
          range: [lo.value === "" ? null : Number(lo.value), hi.value === "" ? null : Number(hi.value)],
        });
      });
      this.builderControls.append(chart, el("div", { class: "bounds" }, [lo, hi, apply]));
    } catch (error) {
      this.surface(error);
    }
  }

  private surface(error: unknown): void {
    if (error instanceof ApiError) {
      this.showToast(error.code, error.message);
    } else {
      this.showToast("Error", String(error));
    }
  }

  private showToast(code: string, message: string): void {
    this.toastBox.textContent = `${code}: ${message}`;
    this.toastBox.setAttribute("data-code", code);
    this.toastBox.removeAttribute("hidden");
  }

  private clearToast(): void {
    this.toastBox.textContent = "";
    this.toastBox.removeAttribute("data-code");
    this.toastBox.setAttribute("hidden", "");
  }
}
