import { ApiClient } from "./api.js";
import { Workbench } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
const workbench = new Workbench(new ApiClient(window.location.origin), root);
void workbench.loadDataset("sample").catch((err) => {
  const status = document.getElementById("status");
  if (status) status.textContent = String(err);
});
