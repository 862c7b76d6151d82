/** Nested-container rendering of a model tree.
 *
 * Named subtrees draw as collapsible containers, recursion leaves as
 * back-links to their target, operators as labeled groups.  Folded containers
 * render as a single node; highlighting marks search hits.
 */

import type { ModelNode, ViewState } from "./types.js";
import { labelOf } from "./types.js";

const OPERATOR_MARKS: Record<string, string> = {
  seq: "→",
  xor: "×",
  loop: "↺",
  par: "∧",
};

export function renderModel(
  root: ModelNode,
  state: ViewState,
  doc: Document,
  onFold?: (id: string) => void,
): HTMLElement {
  const container = doc.createElement("div");
  container.className = "model-view";
  container.appendChild(renderNode(root, state, doc, onFold));
  return container;
}

function renderNode(
  node: ModelNode,
  state: ViewState,
  doc: Document,
  onFold?: (id: string) => void,
): HTMLElement {
  const el = doc.createElement("div");
  el.dataset.nodeId = node.id;
  el.dataset.kind = node.kind;
  if (node.kind === "sub") {
    if (state.folded.has(node.id)) {
      el.className = "node subtree folded";
      el.appendChild(title(doc, node, onFold, "+ " + labelOf(node)));
      return el;
    }
    el.className = "node subtree";
    el.appendChild(title(doc, node, onFold, "− " + labelOf(node)));
    const body = doc.createElement("div");
    body.className = "subtree-body";
    for (const child of node.children ?? []) {
      body.appendChild(renderNode(child, state, doc, onFold));
    }
    el.appendChild(body);
    return el;
  }
  if (node.kind === "act" || node.kind === "tau") {
    el.className = node.kind === "tau" ? "node silent" : "node activity";
    el.textContent = labelOf(node);
    return el;
  }
  if (node.kind === "rec") {
    el.className = "node recursion";
    el.textContent = "↩ " + labelOf(node);
    el.title = `re-enters ${labelOf(node)}`;
    return el;
  }
  el.className = `node group ${node.kind}`;
  const mark = doc.createElement("span");
  mark.className = "operator-mark";
  mark.textContent = OPERATOR_MARKS[node.kind] ?? node.kind;
  el.appendChild(mark);
  for (const child of node.children ?? []) {
    el.appendChild(renderNode(child, state, doc, onFold));
  }
  return el;
}

function title(
  doc: Document,
  node: ModelNode,
  onFold: ((id: string) => void) | undefined,
  text: string,
): HTMLElement {
  const head = doc.createElement("button");
  head.className = "subtree-title";
  head.type = "button";
  head.textContent = text;
  if (onFold) {
    head.addEventListener("click", () => onFold(node.id));
  }
  return head;
}

/** Ids of nodes currently rendered (folded containers hide their bodies). */
export function renderedNodeIds(view: HTMLElement): Set<string> {
  const out = new Set<string>();
  view.querySelectorAll<HTMLElement>("[data-node-id]").forEach((el) => {
    out.add(el.dataset.nodeId as string);
  });
  return out;
}

export function applyHighlights(view: HTMLElement, ids: string[]): number {
  let count = 0;
  view.querySelectorAll<HTMLElement>("[data-node-id]").forEach((el) => {
    const hit = ids.includes(el.dataset.nodeId as string);
    el.classList.toggle("highlight", hit);
    if (hit) count += 1;
  });
  const first = view.querySelector<HTMLElement>(".highlight");
  first?.scrollIntoView?.({ block: "center" });
  return count;
}

export function renderStats(stats: {
  traces: number;
  events: number;
  depth: number;
  alphabet: string[];
}, doc: Document): HTMLElement {
  const el = doc.createElement("div");
  el.className = "stats";
  el.textContent =
    `${stats.traces} traces · ${stats.events} events · ` +
    `depth ${stats.depth} · ${stats.alphabet.length} activities`;
  return el;
}
