/**
 * Landing view: upload a CSV, inspect per-column distributions, pick an
 * outcome, and open an exploration session.
 */

import {
  ApiClient,
  ApiError,
  ColumnSummary,
  DatasetManifest,
  SessionCreated,
  isCategorical,
} from "./api.js";
import { distributionChart } from "./charts.js";
import { clear, el } from "./dom.js";
import { fmtCount } from "./format.js";

export type SessionHandler = (
  manifest: DatasetManifest,
  outcome: string,
  created: SessionCreated,
) => void;

export class LandingView {
  private manifest: DatasetManifest | null = null;
  private readonly summaryBox: HTMLElement;
  private readonly featureList: HTMLUListElement;
  private readonly previewBox: HTMLElement;
  private readonly outcomeSelect: HTMLSelectElement;
  private readonly exploreButton: HTMLButtonElement;
  private readonly errorBox: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
    private readonly onSession: SessionHandler,
  ) {
    const fileInput = el("input", { type: "file", accept: ".csv,text/csv", id: "csv-file" });
    const uploadButton = el("button", { id: "upload-btn", text: "Upload" });
    uploadButton.addEventListener("click", () => {
      const file = fileInput.files?.[0];
      if (file === undefined) {
        this.showError("NoFile", "choose a CSV file first");
        return;
      }
      void file.text().then((text) => this.handleCsv(text, file.name));
    });

    this.summaryBox = el("p", { class: "dataset-summary" });
    this.featureList = el("ul", { class: "feature-list" });
    this.previewBox = el("div", { class: "column-preview" });
    this.outcomeSelect = el("select", { id: "outcome-select", disabled: true });
    this.exploreButton = el("button", { id: "explore-btn", text: "Explore", disabled: true });
    this.errorBox = el("p", { class: "landing-error", role: "alert" });

    this.outcomeSelect.addEventListener("change", () => {
      this.exploreButton.disabled = this.outcomeSelect.value === "";
    });
    this.exploreButton.addEventListener("click", () => {
      void this.explore();
    });

    root.append(
      el("section", { class: "landing" }, [
        el("h1", { text: "filterlens" }),
        el("div", { class: "upload-row" }, [fileInput, uploadButton]),
        this.errorBox,
        this.summaryBox,
        this.featureList,
        this.previewBox,
        el("div", { class: "outcome-row" }, [
          el("label", { for: "outcome-select", text: "outcome" }),
          this.outcomeSelect,
          this.exploreButton,
        ]),
      ]),
    );
  }

  /** Upload raw CSV text and render the resulting feature list. */
  async handleCsv(text: string, filename: string): Promise<void> {
    const name = filename.replace(/\.csv$/i, "") || "dataset";
    try {
      this.renderManifest(await this.client.uploadDataset(text, name));
      this.clearError();
    } catch (error) {
      this.surface(error);
    }
  }

  /** Show a column's distribution: bars when categorical, area when numerical. */
  async preview(column: string): Promise<void> {
    if (this.manifest === null) return;
    try {
      const summary: ColumnSummary = await this.client.columnSummary(this.manifest.id, column);
      clear(this.previewBox);
      this.previewBox.append(
        el("h3", { text: summary.name }),
        distributionChart([{ label: summary.name, distribution: summary.distribution }]),
      );
      this.clearError();
    } catch (error) {
      this.surface(error);
    }
  }

  private async explore(): Promise<void> {
    const outcome = this.outcomeSelect.value;
    if (this.manifest === null || outcome === "") return;
    try {
      const created = await this.client.createSession(this.manifest.id, outcome, "counterfactual");
      this.onSession(this.manifest, outcome, created);
    } catch (error) {
      this.surface(error);
    }
  }

  private renderManifest(manifest: DatasetManifest): void {
    this.manifest = manifest;
    this.summaryBox.textContent = `${manifest.name} · ${fmtCount(manifest.n_rows)} rows`;
    this.summaryBox.setAttribute("data-n-rows", String(manifest.n_rows));

    clear(this.featureList);
    for (const column of manifest.columns) {
      const item = el(
        "li",
        { class: "feature-item", "data-column": column.name, "data-kind": column.kind },
        [
          el("span", { class: "feature-name", text: column.name }),
          el("span", {
            class: `badge badge-${isCategorical(column.kind) ? "categorical" : "numerical"}`,
            text: isCategorical(column.kind) ? "categorical" : "numerical",
          }),
        ],
      );
      item.addEventListener("click", () => {
        void this.preview(column.name);
      });
      this.featureList.append(item);
    }

    clear(this.outcomeSelect);
    this.outcomeSelect.append(el("option", { value: "", text: "choose outcome" }));
    for (const column of manifest.columns) {
      this.outcomeSelect.append(el("option", { value: column.name, text: column.name }));
    }
    this.outcomeSelect.disabled = false;
    this.exploreButton.disabled = true;
    clear(this.previewBox);
  }

  private surface(error: unknown): void {
    if (error instanceof ApiError) {
      this.showError(error.code, error.message);
    } else {
      this.showError("Error", String(error));
    }
  }

  private showError(code: string, message: string): void {
    this.errorBox.textContent = `${code}: ${message}`;
    this.errorBox.setAttribute("data-code", code);
  }

  private clearError(): void {
    this.errorBox.textContent = "";
    this.errorBox.removeAttribute("data-code");
  }
}
