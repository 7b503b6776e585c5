/** Browser entry point: mount the app on #app against the same origin. */

import { ApiClient } from "./api.js";
import { startApp } from "./app.js";

const mount = document.getElementById("app");
if (mount !== null) {
  startApp(mount, new ApiClient(""));
}
