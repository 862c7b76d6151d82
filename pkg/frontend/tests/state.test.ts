import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { DEBOUNCE_MS, WorkbenchController } from "../src/state.js";
import type { ModelNode } from "../src/types.js";
import { collectIds } from "../src/types.js";
import { installFixtureFetch, type FetchLog } from "./helpers.js";

describe("WorkbenchController", () => {
  let log: FetchLog;
  let models: ModelNode[];
  let errors: string[];
  let controller: WorkbenchController;

  beforeEach(() => {
    vi.useFakeTimers();
    log = installFixtureFetch();
    models = [];
    errors = [];
    controller = new WorkbenchController({
      onModel: (model) => models.push(model),
      onError: (message) => errors.push(message),
      onHighlights: () => {},
    });
  });

  afterEach(() => {
    vi.unstubAllGlobals();
    vi.useRealTimers();
  });

  async function settle() {
    await vi.runAllTimersAsync();
  }

  it("issues exactly one debounced request for a burst of slider moves", async () => {
    controller.setParams({ paths: 0.85 });
    controller.setParams({ paths: 0.9 });
    controller.setParams({ paths: 0.95 });
    controller.setParams({ paths: 1.0 });
    expect(log.urls).toHaveLength(0); // nothing before the debounce expires
    await settle();
    const modelCalls = log.urls.filter((u) => u.includes("/api/model"));
    expect(modelCalls).toHaveLength(1);
    expect(modelCalls[0]).toContain("paths=1");
    expect(models).toHaveLength(1);
  });

  it("waits the full debounce window", async () => {
    controller.setParams({ paths: 0.9 });
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS - 10);
    expect(log.urls).toHaveLength(0);
    await vi.advanceTimersByTimeAsync(20);
    expect(log.urls.filter((u) => u.includes("/api/model"))).toHaveLength(1);
  });

  it("separate settled changes each fetch once", async () => {
    controller.setParams({ paths: 0.9 });
    await settle();
    controller.setParams({ minDepth: 1 });
    await settle();
    expect(log.urls.filter((u) => u.includes("/api/model"))).toHaveLength(2);
  });

  it("discards stale responses via sequence numbers", async () => {
    const slowModel: ModelNode = { id: "0", kind: "act", activity: "stale" };
    const fastModel: ModelNode = { id: "0", kind: "act", activity: "fresh" };
    let call = 0;
    const resolvers: Array<() => void> = [];
    vi.stubGlobal(
      "fetch",
      vi.fn(
        (url: RequestInfo | URL) =>
          new Promise<Response>((resolve) => {
            const body = call++ === 0 ? slowModel : fastModel;
            resolvers.push(() =>
              resolve(
                new Response(JSON.stringify(body), {
                  status: 200,
                  headers: { "content-type": "application/json" },
                }),
              ),
            );
          }),
      ),
    );
    void controller.refresh(); // request 1 (will resolve last)
    void controller.refresh(); // request 2
    resolvers[1]!();
    await vi.advanceTimersByTimeAsync(0);
    resolvers[0]!();
    await vi.advanceTimersByTimeAsync(0);
    expect(models.map((m) => m.activity)).toEqual(["fresh"]); // stale dropped
  });

  it("fold state never mutates fetched data and round-trips", async () => {
    await controller.refresh();
    const fetched = controller.model!;
    const snapshot = JSON.stringify(fetched);
    const someContainer = [...collectIds(fetched)].find((id) => id !== "0")!;
    controller.toggleFold(someContainer);
    expect(controller.state.folded.has(someContainer)).toBe(true);
    controller.toggleFold(someContainer);
    expect(controller.state.folded.has(someContainer)).toBe(false);
    expect(controller.model).toBe(fetched); // same object, no refetch
    expect(JSON.stringify(controller.model)).toBe(snapshot);
    expect(log.urls.filter((u) => u.includes("/api/model"))).toHaveLength(1);
  });

  it("prunes folded ids that vanish from the model", async () => {
    await controller.refresh();
    controller.state.folded.add("no.such.node");
    await controller.refresh();
    expect(controller.state.folded.has("no.such.node")).toBe(false);
  });

  it("surfaces backend rejections as error messages", async () => {
    controller.setParams({ paths: 7 });
    await settle();
    expect(errors).toHaveLength(1);
    expect(errors[0]).toContain("paths");
  });
});
