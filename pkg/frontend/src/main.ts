/** Entry point: wire the API client, controller, and DOM view together.
 *
 * The API base URL defaults to same-origin and can be overridden with
 * `?api=http://host:port` so the static page can talk to a service running
 * elsewhere.
 */

import { ApiClient } from "./api.js";
import { DomView } from "./app.js";
import { ChatController } from "./controller.js";

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const base = (params.get("api") ?? "").replace(/\/$/, "");
  const api = new ApiClient(base);

  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const view = new DomView(root);
  const controller = new ChatController(api, view, window.sessionStorage);

  let systems: string[] = [];
  try {
    systems = (await api.listSystems()).systems;
  } catch {
    root.textContent = "Cannot reach the dialog service. Is it running?";
    return;
  }
  view.bind(controller, systems);
  await controller.restore();
}

void boot();
