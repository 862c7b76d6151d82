/** Workbench bootstrap: sliders on the right drive refetching, the tree view
 * and search box on the left drive exploration. */

import { fetchStats } from "./api.js";
import { WorkbenchController } from "./state.js";
import { applyHighlights, renderModel, renderStats } from "./render.js";
import type { ModelNode, ViewState } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

export function boot(): WorkbenchController {
  const view = el<HTMLDivElement>("model");
  const banner = el<HTMLDivElement>("banner");
  let highlights: string[] = [];

  const controller = new WorkbenchController({
    onModel(model: ModelNode, state: ViewState) {
      banner.textContent = "";
      banner.className = "banner";
      view.replaceChildren(
        renderModel(model, state, document, (id) => controller.toggleFold(id)),
      );
      applyHighlights(view, highlights);
    },
    onError(message: string) {
      banner.textContent = message;
      banner.className = "banner error";
    },
    onHighlights(ids: string[]) {
      highlights = ids;
      const count = applyHighlights(view, ids);
      const status = el<HTMLSpanElement>("search-status");
      status.textContent = controller.state.searchQuery
        ? count
          ? `${count} match(es)`
          : "no matches"
        : "";
    },
  });

  const paths = el<HTMLInputElement>("paths");
  const pathsLabel = el<HTMLSpanElement>("paths-label");
  paths.addEventListener("input", () => {
    pathsLabel.textContent = Number(paths.value).toFixed(2);
    controller.setParams({ paths: Number(paths.value) });
  });
  const minDepth = el<HTMLInputElement>("min-depth");
  minDepth.addEventListener("input", () =>
    controller.setParams({ minDepth: Number(minDepth.value) }),
  );
  const maxDepth = el<HTMLInputElement>("max-depth");
  maxDepth.addEventListener("input", () =>
    controller.setParams({ maxDepth: Number(maxDepth.value) }),
  );
  const searchBox = el<HTMLInputElement>("search");
  searchBox.addEventListener("input", () => {
    void controller.runSearch(searchBox.value);
  });

  void fetchStats().then((stats) => {
    el<HTMLDivElement>("stats").replaceChildren(renderStats(stats, document));
  });
  void controller.refresh();
  return controller;
}

if (typeof document !== "undefined" && document.getElementById("model")) {
  boot();
}
