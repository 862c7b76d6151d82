/** View-state controller: debounced refetching, stale-response discard, and
 * client-side fold state.
 *
 * Every parameter change schedules exactly one fetch after the debounce
 * window; responses are tagged with a monotone sequence number and anything
 * out-of-date is dropped, so the rendered model always reflects the newest
 * request.  Folding never touches fetched data.
 */

import { fetchModel, search } from "./api.js";
import type { ModelNode, ViewState } from "./types.js";
import { collectIds, initialViewState } from "./types.js";

export const DEBOUNCE_MS = 150;

export interface ControllerEvents {
  onModel(model: ModelNode, state: ViewState): void;
  onError(message: string): void;
  onHighlights(ids: string[]): void;
}

type Timer = ReturnType<typeof setTimeout>;

export class WorkbenchController {
  readonly state: ViewState = initialViewState();
  model: ModelNode | null = null;
  private timer: Timer | null = null;
  private requestSeq = 0;
  private renderedSeq = 0;
  fetchCount = 0;

  constructor(
    private events: ControllerEvents,
    private base = "",
  ) {}

  /** Apply a parameter change and schedule a single debounced refetch. */
  setParams(update: Partial<Pick<ViewState, "paths" | "minDepth" | "maxDepth">>): void {
    Object.assign(this.state, update);
    if (this.state.minDepth > this.state.maxDepth) {
      this.state.maxDepth = this.state.minDepth;
    }
    this.schedule();
  }

  private schedule(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.refresh();
    }, DEBOUNCE_MS);
  }

  /** Fetch immediately (initial load); stale responses are discarded. */
  async refresh(): Promise<void> {
    const seq = ++this.requestSeq;
    this.fetchCount += 1;
    try {
      const model = await fetchModel(this.state, this.base);
      if (seq <= this.renderedSeq) return; // a newer response already landed
      this.renderedSeq = seq;
      this.model = model;
      this.pruneFolds();
      this.events.onModel(model, this.state);
    } catch (error) {
      if (seq <= this.renderedSeq) return;
      this.renderedSeq = seq;
      this.events.onError(error instanceof Error ? error.message : String(error));
    }
  }

  /** Folded ids must exist in the current model. */
  private pruneFolds(): void {
    if (!this.model) return;
    const ids = collectIds(this.model);
    for (const id of [...this.state.folded]) {
      if (!ids.has(id)) this.state.folded.delete(id);
    }
  }

  /** Client-side only: no fetch, fetched data untouched. */
  toggleFold(id: string): void {
    if (!this.model || !collectIds(this.model).has(id)) return;
    if (this.state.folded.has(id)) {
      this.state.folded.delete(id);
    } else {
      this.state.folded.add(id);
    }
    this.events.onModel(this.model, this.state);
  }

  async runSearch(query: string): Promise<void> {
    this.state.searchQuery = query;
    if (!query) {
      this.events.onHighlights([]);
      return;
    }
    try {
      const result = await search(query, this.base);
      this.events.onHighlights(result.ids);
    } catch (error) {
      this.events.onError(error instanceof Error ? error.message : String(error));
    }
  }
}
