import { ApiClient } from "./api.js";
import { AnnotatorApp } from "./app.js";

function requireAnnotator(): string {
  const params = new URLSearchParams(window.location.search);
  const fromQuery = params.get("annotator");
  if (fromQuery) {
    window.localStorage.setItem("annotator", fromQuery);
    return fromQuery;
  }
  const stored = window.localStorage.getItem("annotator");
  if (stored) return stored;
  const entered = window.prompt("Annotator id:") ?? "";
  window.localStorage.setItem("annotator", entered);
  return entered;
}

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app container");
}
const api = new ApiClient(window.location.origin, requireAnnotator());
const app = new AnnotatorApp(root, api);
void app.init();
