"""Behavior-preserving tree rewriting and depth filtering.

Reduction applies four rules innermost-first to a fixpoint: singleton
collapse, associative flattening of seq/par, silent-child removal in seq/par,
and silent-child removal in xor when the empty trace stays available through
the remaining children.
"""

from __future__ import annotations

from .errors import InvalidRangeError
from .ptree import (
    TAU,
    ActivityLeaf,
    HPTree,
    NamedSubtree,
    Op,
    Operator,
    RecursionLeaf,
    SilentLeaf,
)


def _nullable(tree: HPTree) -> bool:
    if isinstance(tree, SilentLeaf):
        return True
    if isinstance(tree, (ActivityLeaf, RecursionLeaf, NamedSubtree)):
        return False
    if tree.op is Op.XOR:
        return any(_nullable(c) for c in tree.children)
    if tree.op is Op.LOOP:
        return _nullable(tree.children[0])
    return all(_nullable(c) for c in tree.children)


def _reduce_node(tree: HPTree) -> HPTree:
    """Apply the local rules at one node whose children are already reduced."""
    if not isinstance(tree, Operator):
        return tree
    op = tree.op
    kids = list(tree.children)
    if op in (Op.SEQ, Op.PAR):
        flat = []
        for kid in kids:
            if isinstance(kid, Operator) and kid.op is op:
                flat.extend(kid.children)
            else:
                flat.append(kid)
        kids = [k for k in flat if not isinstance(k, SilentLeaf)]
        if not kids:
            return TAU
        if len(kids) == 1:
            return kids[0]
        return Operator(op, tuple(kids))
    if op is Op.XOR:
        while True:
            silent = [i for i, k in enumerate(kids) if isinstance(k, SilentLeaf)]
            if not silent:
                break
            rest = [k for i, k in enumerate(kids) if i != silent[0]]
            if rest and any(_nullable(k) for k in rest):
                kids = rest
            else:
                break
        if len(kids) == 1:
            return kids[0]
        return Operator(op, tuple(kids))
    return Operator(op, tuple(kids))


def reduce_tree(tree: HPTree) -> HPTree:
    """Reduce to a fixpoint; the bounded language is preserved."""
    if isinstance(tree, Operator):
        node = Operator(tree.op, tuple(reduce_tree(c) for c in tree.children))
    elif isinstance(tree, NamedSubtree):
        node = NamedSubtree(tree.name, reduce_tree(tree.child))
    else:
        node = tree
    while True:
        reduced = _reduce_node(node)
        if reduced == node:
            return node
        if isinstance(reduced, Operator):
            node = Operator(reduced.op, tuple(reduce_tree(c) for c in reduced.children))
        elif isinstance(reduced, NamedSubtree):
            node = NamedSubtree(reduced.name, reduce_tree(reduced.child))
        else:
            node = reduced


def depth_filter(tree: HPTree, min_depth: int = 0, max_depth: int | None = None) -> HPTree:
    """Restrict a model to the named-subtree depth window [min_depth, max_depth].

    Depth counts named-subtree nesting with root content at depth 0.  Content
    above the window is anonymized: named subtrees whose content lies at or
    above min_depth dissolve into their children and activity leaves above the
    window become silent.  A named subtree whose content would exceed
    max_depth collapses to an activity leaf carrying its name, hiding the
    subtree.  Recursion leaves whose binding dissolved or collapsed become
    activity leaves.  The result is reduction-normalized.
    """
    limit = float("inf") if max_depth is None else max_depth
    if min_depth > limit:
        raise InvalidRangeError(f"min_depth {min_depth} exceeds max_depth {max_depth}")

    def leaf_at(name: str, depth: int) -> HPTree:
        return ActivityLeaf(name) if depth >= min_depth else TAU

    def walk(node: HPTree, depth: int, kept: frozenset[str]) -> HPTree:
        if isinstance(node, ActivityLeaf):
            return node if depth >= min_depth else TAU
        if isinstance(node, SilentLeaf):
            return node
        if isinstance(node, RecursionLeaf):
            if node.name in kept:
                return node
            return leaf_at(node.name, depth)
        if isinstance(node, NamedSubtree):
            content = depth + 1
            if content > limit:
                return leaf_at(node.name, depth)
            if content <= min_depth:
                return walk(node.child, content, kept - {node.name})
            return NamedSubtree(node.name, walk(node.child, content, kept | {node.name}))
        return Operator(node.op, tuple(walk(c, depth, kept) for c in node.children))

    return reduce_tree(walk(tree, 0, frozenset()))
