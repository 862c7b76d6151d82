/** Shared test plumbing: a fetch stub serving the recorded API fixtures. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { vi } from "vitest";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "..", "fixtures", name), "utf-8")) as T;
}

export interface FetchLog {
  urls: string[];
}

export function installFixtureFetch(): FetchLog {
  const log: FetchLog = { urls: [] };
  const model = fixture("model.json");
  const stats = fixture("stats.json");
  const searchHits = fixture<{ query: string; ids: string[] }>("search.json");
  vi.stubGlobal(
    "fetch",
    vi.fn(async (input: RequestInfo | URL) => {
      const url = String(input);
      log.urls.push(url);
      const respond = (body: unknown, status = 200) =>
        new Response(JSON.stringify(body), {
          status,
          headers: { "content-type": "application/json" },
        });
      if (url.includes("/api/model")) {
        const params = new URL(url, "http://localhost").searchParams;
        const paths = Number(params.get("paths"));
        if (!(paths >= 0 && paths <= 1)) {
          return respond({ error: "paths must lie in [0, 1]" }, 400);
        }
        return respond(model);
      }
      if (url.includes("/api/stats")) return respond(stats);
      if (url.includes("/api/search")) {
        const params = new URL(url, "http://localhost").searchParams;
        const q = params.get("q") ?? "";
        return respond(q === searchHits.query ? searchHits : { query: q, ids: [] });
      }
      return respond({ error: "not found" }, 404);
    }),
  );
  return log;
}
