/**
 * Typed client for the filterlens HTTP API.
 *
 * The UI never computes statistics: everything rendered comes straight
 * out of these response payloads, so the types below mirror the server's
 * canonical JSON exactly.
 */

export type ColumnKind = "numerical" | "categorical_binary" | "categorical_multi";

export interface ColumnInfo {
  name: string;
  kind: ColumnKind;
}

export interface DatasetManifest {
  id: string;
  name: string;
  byte_size: number;
  n_rows: number;
  numeric: string[];
  categorical: string[];
  columns: ColumnInfo[];
}

export interface CategoricalDistribution {
  kind: "categorical";
  categories: string[];
  counts: number[];
  fractions: number[];
  n: number;
}

export interface NumericDistribution {
  kind: "numerical";
  bin_edges: number[];
  counts: number[];
  fractions: number[];
  n: number;
  min: number | null;
  max: number | null;
  mean: number | null;
}

export type Distribution = CategoricalDistribution | NumericDistribution;

export interface ColumnSummary {
  name: string;
  kind: ColumnKind;
  categories: string[] | null;
  distribution: Distribution;
}

/** `range` bounds use null for an open end. */
export interface RangeConstraint {
  column: string;
  range: [number | null, number | null];
}

export interface CategoryConstraint {
  column: string;
  categories: string[];
}

export type Constraint = RangeConstraint | CategoryConstraint;

export type Mode = "counterfactual" | "control";

export interface SimilarityConfig {
  features: string[] | null;
  cf_fraction: number;
  in_sample_cap: number | null;
  seed: number;
}

export interface SubsetInfo {
  rows: number[];
  count: number;
  fraction: number;
}

export interface StrengthReport {
  d: number;
  measure: "hellinger" | "kolmogorov_smirnov";
  strength: "weak" | "moderate" | "strong";
  sizes: Record<string, number>;
}

export interface AssociationEntry {
  feature: string;
  method: "pearson" | "regression_r2" | "cramers_v";
  values: Record<string, number | null>;
}

export interface FeatureDetail {
  feature: string;
  kind: ColumnKind;
  distributions: Record<string, Distribution>;
  pairing: {
    labels: string[];
    categories?: string[];
    bin_edges?: number[];
    fractions: Record<string, number[]>;
    counts: Record<string, number[]>;
  };
}

export interface Snapshot {
  mode: Mode;
  outcome: string;
  n_rows: number;
  config: SimilarityConfig;
  similarity_features: string[];
  filters: Constraint[];
  subsets: Record<string, SubsetInfo>;
  distances: { rows: number[]; values: number[] } | null;
  outcome_distributions: Record<string, Distribution>;
  strength: StrengthReport | null;
  associations: AssociationEntry[];
  selected_feature: string | null;
  feature_detail: FeatureDetail | null;
}

export interface SessionCreated {
  id: string;
  snapshot: Snapshot;
}

/** Error body the server sends for every non-2xx response. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base = "",
    private readonly doFetch: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.doFetch(this.base + path, init);
    const text = await response.text();
    if (!response.ok) {
      let code = `Http${response.status}`;
      let message = text;
      try {
        const body = JSON.parse(text) as { code?: string; message?: string };
        code = body.code ?? code;
        message = body.message ?? message;
      } catch {
        // non-JSON error body, keep the raw text
      }
      throw new ApiError(response.status, code, message);
    }
    return JSON.parse(text) as T;
  }

  uploadDataset(
    csv: Blob | string,
    name: string,
    overrides: { numeric?: string[]; categorical?: string[] } = {},
  ): Promise<DatasetManifest> {
    const params = new URLSearchParams();
    params.set("name", name);
    for (const column of overrides.numeric ?? []) params.append("numeric", column);
    for (const column of overrides.categorical ?? []) params.append("categorical", column);
    return this.request(`/datasets?${params}`, {
      method: "POST",
      headers: { "content-type": "text/csv" },
      body: csv,
    });
  }

  datasetManifest(dsId: string): Promise<DatasetManifest> {
    return this.request(`/datasets/${encodeURIComponent(dsId)}`);
  }

  columnSummary(dsId: string, column: string): Promise<ColumnSummary> {
    return this.request(
      `/datasets/${encodeURIComponent(dsId)}/columns/${encodeURIComponent(column)}`,
    );
  }

  createSession(dsId: string, outcome: string, mode: Mode): Promise<SessionCreated> {
    return this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ dataset: dsId, outcome, mode }),
    });
  }

  snapshot(sessionId: string, feature?: string): Promise<Snapshot> {
    const query = feature === undefined ? "" : `?feature=${encodeURIComponent(feature)}`;
    return this.request(`/sessions/${encodeURIComponent(sessionId)}${query}`);
  }

  pushFilter(sessionId: string, constraint: Constraint): Promise<Snapshot> {
    return this.request(`/sessions/${encodeURIComponent(sessionId)}/filters`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(constraint),
    });
  }

  popFilter(sessionId: string, column: string): Promise<Snapshot> {
    return this.request(
      `/sessions/${encodeURIComponent(sessionId)}/filters/${encodeURIComponent(column)}`,
      { method: "DELETE" },
    );
  }
}

export function isCategorical(kind: ColumnKind): boolean {
  return kind !== "numerical";
}

/** Render a constraint the way the CLI prints it: col:lo..hi or col=a|b. */
export function constraintLabel(constraint: Constraint): string {
  if ("range" in constraint) {
    const [lo, hi] = constraint.range;
    return `${constraint.column}:${lo ?? ""}..${hi ?? ""}`;
  }
  return `${constraint.column}=${[...constraint.categories].sort().join("|")}`;
}
