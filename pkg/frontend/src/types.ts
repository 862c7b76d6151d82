/** Wire types served by the discovery backend. */

export type NodeKind = "act" | "tau" | "seq" | "xor" | "loop" | "par" | "sub" | "rec";

export interface ModelNode {
  id: string;
  kind: NodeKind;
  activity?: string;
  name?: string;
  children?: ModelNode[];
}

export interface LogStatsPayload {
  traces: number;
  events: number;
  depth: number;
  alphabet: string[];
  avg_trace_len: number;
}

export interface SearchPayload {
  query: string;
  ids: string[];
}

export interface ViewState {
  paths: number;
  minDepth: number;
  maxDepth: number;
  folded: Set<string>;
  searchQuery: string;
  selected: string | null;
}

export function initialViewState(): ViewState {
  return {
    paths: 0.8,
    minDepth: 0,
    maxDepth: 99,
    folded: new Set(),
    searchQuery: "",
    selected: null,
  };
}

/** All node ids present in a model tree. */
export function collectIds(node: ModelNode, into: Set<string> = new Set()): Set<string> {
  into.add(node.id);
  for (const child of node.children ?? []) collectIds(child, into);
  return into;
}

export function labelOf(node: ModelNode): string {
  switch (node.kind) {
    case "act":
      return node.activity ?? "?";
    case "sub":
    case "rec":
      return node.name ?? "?";
    case "tau":
      return "τ";
    default:
      return node.kind;
  }
}
