import { ApiClient, buildTimeApiBase } from "./api";
import { Wizard } from "./wizard";

const root = document.getElementById("app");
if (root) {
  const wizard = new Wizard(root, new ApiClient(buildTimeApiBase()));
  wizard.start().catch(() => {
    root.textContent =
      "Could not reach the recommendation service. Is the API running?";
  });
}
