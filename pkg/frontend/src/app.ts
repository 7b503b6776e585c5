/** Wires the landing flow into the explorer: one session per page. */

import { ApiClient } from "./api.js";
import { clear } from "./dom.js";
import { ExplorerView } from "./explorer.js";
import { LandingView } from "./landing.js";

export function startApp(root: HTMLElement, client: ApiClient): LandingView {
  return new LandingView(root, client, (manifest, outcome, created) => {
    clear(root);
    new ExplorerView(root, client, manifest, outcome, created);
  });
}
