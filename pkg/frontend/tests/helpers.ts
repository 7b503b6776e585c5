/**
 * Shared test scaffolding: fixture loading plus a route-stubbed fetch that
 * serves recorded API response bytes. Fidelity tests mount views against
 * this stub and compare every rendered value with the parsed fixture, so
 * the assertions are exactly "screen equals intercepted response".
 */

import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import {
  ApiClient,
  Constraint,
  DatasetManifest,
  FetchLike,
  SessionCreated,
  Snapshot,
} from "../src/api.js";
import { ExplorerView } from "../src/explorer.js";

const FIXTURE_DIR = resolve(process.cwd(), "tests", "fixtures");

export function fixtureText(name: string): string {
  return readFileSync(resolve(FIXTURE_DIR, `${name}.json`), "utf8");
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

interface Route {
  method: string;
  url: string;
  status: number;
  body: string;
  match: ((body: string) => boolean) | undefined;
}

/** Later routes win, so tests can override a scenario's defaults. */
export class FixtureServer {
  private readonly routes: Route[] = [];
  readonly requests: { method: string; url: string; body: string }[] = [];

  route(
    method: string,
    url: string,
    body: string,
    status = 200,
    match?: (body: string) => boolean,
  ): void {
    this.routes.push({ method, url, status, body, match });
  }

  readonly fetch: FetchLike = (input, init) => {
    const method = init?.method ?? "GET";
    const sent = typeof init?.body === "string" ? init.body : "";
    this.requests.push({ method, url: input, body: sent });
    for (let i = this.routes.length - 1; i >= 0; i -= 1) {
      const route = this.routes[i]!;
      if (route.method !== method || route.url !== input) continue;
      if (route.match !== undefined && !route.match(sent)) continue;
      return Promise.resolve(
        new Response(route.body, {
          status: route.status,
          headers: { "content-type": "application/json" },
        }),
      );
    }
    return Promise.reject(new Error(`unstubbed request: ${method} ${input}`));
  };

  client(): ApiClient {
    return new ApiClient("", this.fetch);
  }
}

export type ScenarioLabel = "strong" | "weak";

export interface Scenario {
  server: FixtureServer;
  manifest: DatasetManifest;
  create: SessionCreated;
  pushed: Snapshot;
  detail: Snapshot;
  controlCreate: SessionCreated;
  controlPushed: Snapshot;
  controlDetail: Snapshot;
  constraint: Constraint;
  detailFeature: string;
}

const CONSTRAINTS: Record<ScenarioLabel, Constraint> = {
  strong: { column: "sex", categories: ["Female"] },
  weak: { column: "v_decile_score", range: [6, 10] },
};

const DETAIL_FEATURES: Record<ScenarioLabel, string> = {
  strong: "age",
  weak: "sex",
};

/** Stub every route the explorer needs for one recorded demo scenario. */
export function scenario(label: ScenarioLabel): Scenario {
  const manifest = fixture<DatasetManifest>("manifest");
  const create = fixture<SessionCreated>(`${label}_create`);
  const controlCreate = fixture<SessionCreated>(`${label}_control_create`);
  const constraint = CONSTRAINTS[label];
  const detailFeature = DETAIL_FEATURES[label];

  const server = new FixtureServer();
  server.route("GET", `/datasets/${manifest.id}`, fixtureText("manifest"));
  for (const column of ["sex", "age", "v_decile_score"]) {
    server.route(
      "GET",
      `/datasets/${manifest.id}/columns/${column}`,
      fixtureText(`column_${column}`),
    );
  }
  server.route("POST", "/sessions", fixtureText(`${label}_create`), 201, (body) =>
    body.includes('"counterfactual"'),
  );
  server.route("POST", "/sessions", fixtureText(`${label}_control_create`), 201, (body) =>
    body.includes('"control"'),
  );
  server.route("POST", `/sessions/${create.id}/filters`, fixtureText(label));
  server.route("GET", `/sessions/${create.id}`, fixtureText(label));
  server.route(
    "GET",
    `/sessions/${create.id}?feature=${detailFeature}`,
    fixtureText(`${label}_detail`),
  );
  server.route(
    "POST",
    `/sessions/${controlCreate.id}/filters`,
    fixtureText(`${label}_control`),
  );
  server.route("GET", `/sessions/${controlCreate.id}`, fixtureText(`${label}_control`));
  server.route(
    "GET",
    `/sessions/${controlCreate.id}?feature=${detailFeature}`,
    fixtureText(`${label}_control_detail`),
  );
  server.route(
    "DELETE",
    `/sessions/${create.id}/filters/${constraint.column}`,
    JSON.stringify(create.snapshot),
  );

  return {
    server,
    manifest,
    create,
    pushed: fixture<Snapshot>(label),
    detail: fixture<Snapshot>(`${label}_detail`),
    controlCreate,
    controlPushed: fixture<Snapshot>(`${label}_control`),
    controlDetail: fixture<Snapshot>(`${label}_control_detail`),
    constraint,
    detailFeature,
  };
}

export function mountExplorer(s: Scenario): { view: ExplorerView; root: HTMLElement } {
  const root = document.createElement("div");
  const view = new ExplorerView(root, s.server.client(), s.manifest, "two_year_recid", s.create);
  return { view, root };
}
