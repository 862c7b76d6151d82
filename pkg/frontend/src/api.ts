/** Thin fetch wrappers over the workbench endpoints. */

import type { LogStatsPayload, ModelNode, SearchPayload, ViewState } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body.error) detail = body.error;
    } catch {
      /* non-json error body */
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export function modelUrl(state: ViewState, base = ""): string {
  const params = new URLSearchParams({
    paths: String(state.paths),
    min_depth: String(state.minDepth),
    max_depth: String(state.maxDepth),
  });
  return `${base}/api/model?${params.toString()}`;
}

export function fetchModel(state: ViewState, base = ""): Promise<ModelNode> {
  return getJson<ModelNode>(modelUrl(state, base));
}

export function fetchStats(base = ""): Promise<LogStatsPayload> {
  return getJson<LogStatsPayload>(`${base}/api/stats`);
}

export function search(query: string, base = ""): Promise<SearchPayload> {
  const params = new URLSearchParams({ q: query });
  return getJson<SearchPayload>(`${base}/api/search?${params.toString()}`);
}
