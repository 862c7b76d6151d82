"""Tree serializers: canonical JSON for the workbench wire format and a
statechart-styled DOT rendering.

Both are deterministic: node ids derive from the structural path from the
root, and xor/par children are emitted in canonical order.
"""

from __future__ import annotations

import json

from .ptree import (
    TAU,
    ActivityLeaf,
    HPTree,
    NamedSubtree,
    Op,
    Operator,
    RecursionLeaf,
    SilentLeaf,
    canonical,
)

_KIND_BY_OP = {Op.SEQ: "seq", Op.XOR: "xor", Op.LOOP: "loop", Op.PAR: "par"}
_OP_BY_KIND = {"seq": Op.SEQ, "xor": Op.XOR, "loop": Op.LOOP, "par": Op.PAR}


def tree_to_obj(tree: HPTree) -> dict:
    tree = canonical(tree)

    def walk(node: HPTree) -> dict:
        if isinstance(node, SilentLeaf):
            return {"kind": "tau"}
        if isinstance(node, ActivityLeaf):
            return {"kind": "act", "activity": node.activity}
        if isinstance(node, RecursionLeaf):
            return {"kind": "rec", "name": node.name}
        if isinstance(node, NamedSubtree):
            return {"kind": "sub", "name": node.name, "children": [walk(node.child)]}
        return {"kind": _KIND_BY_OP[node.op], "children": [walk(c) for c in node.children]}

    return walk(tree)


def to_json(tree: HPTree, annotations: dict | None = None) -> bytes:
    obj = tree_to_obj(tree)
    if annotations:
        obj = {"model": obj, "annotations": dict(sorted(annotations.items()))}
    return json.dumps(obj, indent=2).encode("utf-8")


def obj_to_tree(obj: dict) -> HPTree:
    kind = obj.get("kind")
    if kind == "tau":
        return TAU
    if kind == "act":
        return ActivityLeaf(obj["activity"])
    if kind == "rec":
        return RecursionLeaf(obj["name"])
    if kind == "sub":
        children = obj.get("children", ())
        if len(children) != 1:
            raise ValueError("sub node takes exactly one child")
        return NamedSubtree(obj["name"], obj_to_tree(children[0]))
    if kind in _OP_BY_KIND:
        return Operator(_OP_BY_KIND[kind], tuple(obj_to_tree(c) for c in obj["children"]))
    raise ValueError(f"unknown node kind: {kind!r}")


def from_json(data: bytes | str) -> HPTree:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    obj = json.loads(data)
    if "model" in obj:
        obj = obj["model"]
    return obj_to_tree(obj)


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(tree: HPTree, annotations: dict | None = None) -> bytes:
    """Statechart-flavored DOT: named subtrees as labeled clusters, operators
    as junction pseudo-nodes, recursion leaves as link-back nodes."""
    tree = canonical(tree)
    annotations = annotations or {}
    lines = [
        "digraph model {",
        "  rankdir=TB;",
        '  node [fontname="Helvetica"];',
    ]

    def label_for(node_id: str, text: str) -> str:
        freq = annotations.get(node_id)
        return f"{text} ({freq})" if freq is not None else text

    def emit(node: HPTree, node_id: str, indent: str) -> str:
        if isinstance(node, SilentLeaf):
            lines.append(f'{indent}"{node_id}" [shape=point, label=""];')
            return node_id
        if isinstance(node, ActivityLeaf):
            text = _dot_escape(label_for(node_id, node.activity))
            lines.append(f'{indent}"{node_id}" [shape=box, style=rounded, label="{text}"];')
            return node_id
        if isinstance(node, RecursionLeaf):
            text = _dot_escape(label_for(node_id, node.name))
            lines.append(
                f'{indent}"{node_id}" [shape=cds, style=dashed, label="{text}"];'
            )
            return node_id
        if isinstance(node, NamedSubtree):
            text = _dot_escape(label_for(node_id, node.name))
            lines.append(f'{indent}subgraph "cluster_{node_id}" {{')
            lines.append(f'{indent}  label="{text}";')
            lines.append(f"{indent}  style=rounded;")
            emit(node.child, node_id + "_0", indent + "  ")
            lines.append(f"{indent}}}")
            return node_id + "_0"
        mark = {Op.SEQ: "seq", Op.XOR: "x", Op.LOOP: "loop", Op.PAR: "+"}[node.op]
        lines.append(
            f'{indent}"{node_id}" [shape=diamond, label="{mark}"];'
        )
        for i, child in enumerate(node.children):
            child_anchor = emit(child, f"{node_id}_{i}", indent)
            lines.append(f'{indent}"{node_id}" -> "{child_anchor}";')
        return node_id

    emit(tree, "n0", "  ")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")
