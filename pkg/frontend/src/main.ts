import { createApiClient } from "./api.js";
import { createApp } from "./app.js";
import { createPlayer } from "./player.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app container");
}
const app = createApp(root, { api: createApiClient(), player: createPlayer() });
void app.loadMeta();
