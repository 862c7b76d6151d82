/** Headless end-to-end: the real page wiring driven through jsdom, with the
 * backend played by recorded responses from the discovery service. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { boot } from "../src/main.js";
import { installFixtureFetch, type FetchLog } from "./helpers.js";

const here = dirname(fileURLToPath(import.meta.url));

function mountPage(): void {
  const html = readFileSync(join(here, "..", "index.html"), "utf-8");
  const body = html.split(/<body>|<\/body>/)[1]!.replace(/<script[^>]*><\/script>/, "");
  document.body.innerHTML = body;
}

describe("workbench page", () => {
  let log: FetchLog;

  beforeEach(() => {
    vi.useFakeTimers();
    mountPage();
    log = installFixtureFetch();
  });

  afterEach(() => {
    vi.unstubAllGlobals();
    vi.useRealTimers();
    document.body.innerHTML = "";
  });

  function modelCalls(): string[] {
    return log.urls.filter((u) => u.includes("/api/model"));
  }

  it("moving the paths slider issues exactly one debounced request and re-renders", async () => {
    boot();
    await vi.runAllTimersAsync(); // initial load
    const before = modelCalls().length;
    const slider = document.getElementById("paths") as HTMLInputElement;
    for (const value of ["0.85", "0.9", "0.95", "1"]) {
      slider.value = value;
      slider.dispatchEvent(new Event("input", { bubbles: true }));
    }
    await vi.runAllTimersAsync();
    expect(modelCalls().length).toBe(before + 1);
    expect(document.querySelectorAll("#model .node.subtree").length).toBe(2);
  });

  it("fold and unfold leave fetched data unchanged", async () => {
    const controller = boot();
    await vi.runAllTimersAsync();
    const fetched = controller.model!;
    const snapshot = JSON.stringify(fetched);
    const requests = modelCalls().length;
    const title = document.querySelector<HTMLButtonElement>("#model .subtree-title")!;
    title.click(); // fold
    const foldedView = document.querySelectorAll("#model [data-node-id]");
    expect(foldedView.length).toBe(1); // root container collapsed to one node
    document.querySelector<HTMLButtonElement>("#model .subtree-title")!.click(); // unfold
    expect(JSON.stringify(controller.model)).toBe(snapshot);
    expect(controller.model).toBe(fetched);
    expect(modelCalls().length).toBe(requests); // no refetch for view-only ops
  });

  it("searching 'process' highlights two nodes", async () => {
    boot();
    await vi.runAllTimersAsync();
    const box = document.getElementById("search") as HTMLInputElement;
    box.value = "process";
    box.dispatchEvent(new Event("input", { bubbles: true }));
    await vi.runAllTimersAsync();
    expect(document.querySelectorAll("#model .highlight").length).toBe(2);
    expect(document.getElementById("search-status")!.textContent).toContain("2");
  });

  it("invalid parameters surface as an inline banner, not a crash", async () => {
    const controller = boot();
    await vi.runAllTimersAsync();
    controller.setParams({ paths: 5 });
    await vi.runAllTimersAsync();
    const banner = document.getElementById("banner")!;
    expect(banner.classList.contains("error")).toBe(true);
    expect(banner.textContent).toContain("paths");
  });
});
