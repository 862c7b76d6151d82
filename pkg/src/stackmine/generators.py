"""Seeded generators: random in-class models, complete logs, and trace
sampling.

`gen_model` targets the language-rediscoverable class: fresh activity names
per leaf, no silent children, loop bodies with disjoint start and end
activities, and every recursion leaf bound by a named subtree with a
non-recursive alternative beside it.
"""

from __future__ import annotations

import itertools
import random

from .conformance import is_df_complete
from .errors import CompletenessUnreachableError
from .logs import HierLog
from .ptree import (
    ActivityLeaf,
    HPTree,
    NamedSubtree,
    Op,
    Operator,
    RecursionLeaf,
    SilentLeaf,
    validate,
)
from .semantics import LangBound, language

_OPS = ("seq", "xor", "par", "loop", "sub")
_WEIGHTS = (0.30, 0.25, 0.15, 0.12, 0.18)


def gen_model(seed: int, size: int = 5) -> HPTree:
    """Deterministic random tree with at most `size` activity leaves and zero
    class violations."""
    if size < 1:
        raise ValueError("size must be >= 1")
    rng = random.Random(seed)
    counter = itertools.count()

    def fresh() -> str:
        return f"a{next(counter)}"

    def split_budget(budget: int, k: int) -> list[int]:
        cuts = sorted(rng.sample(range(1, budget), k - 1)) if budget > k else []
        if len(cuts) != k - 1:
            base = [budget // k] * k
            for i in range(budget - sum(base)):
                base[i] += 1
            return [max(1, b) for b in base]
        parts = []
        prev = 0
        for c in cuts + [budget]:
            parts.append(c - prev)
            prev = c
        return parts

    def build(budget: int, rec_names: tuple[str, ...]) -> HPTree:
        if budget <= 1:
            return ActivityLeaf(fresh())
        op = rng.choices(_OPS, weights=_WEIGHTS)[0]
        if op == "loop" and budget < 3:
            op = "seq"
        if op == "sub":
            name = fresh()
            if budget >= 3 and rng.random() < 0.6:
                alt = build(budget - 1, rec_names + (name,))
                child = Operator(Op.XOR, (alt, RecursionLeaf(name)))
            else:
                child = build(budget - 1, rec_names + (name,))
            return NamedSubtree(name, child)
        if op == "loop":
            body_budget = max(2, budget - 1)
            redo_budget = budget - body_budget
            if redo_budget < 1:
                body_budget, redo_budget = budget - 1, 1
            left, right = split_budget(body_budget, 2)
            body = Operator(
                Op.SEQ, (build(left, rec_names), build(right, rec_names))
            )
            return Operator(Op.LOOP, (body, build(redo_budget, rec_names)))
        k = min(rng.randint(2, 3), budget)
        parts = split_budget(budget, k)
        kids = tuple(build(p, rec_names) for p in parts)
        return Operator(Op(op), kids)

    tree = build(size, ())
    assert validate(tree) == [], validate(tree)
    return tree


def gen_complete_log(tree: HPTree, bound: LangBound | None = None) -> HierLog:
    """Materialize the bounded language as a log and grow the bound until the
    log is directly-follows complete against a longer-trace probe."""
    bound = bound or LangBound()
    current = bound
    while True:
        traces = language(tree, current)
        probe = LangBound(
            min(current.max_trace_len * 2, 64), current.max_recursion_depth
        )
        log = HierLog.from_paths(sorted(traces))
        if is_df_complete(log, tree, probe):
            return log
        if current.max_trace_len >= 64:
            raise CompletenessUnreachableError(
                "required directly-follows evidence exceeds the trace-length cap"
            )
        current = LangBound(
            min(current.max_trace_len * 2, 64), current.max_recursion_depth * 2
        )


def _has_free_recursion(node: HPTree, bound: frozenset[str] = frozenset()) -> bool:
    if isinstance(node, RecursionLeaf):
        return node.name not in bound
    if isinstance(node, NamedSubtree):
        return _has_free_recursion(node.child, bound | {node.name})
    if isinstance(node, Operator):
        return any(_has_free_recursion(c, bound) for c in node.children)
    return False


def sample_trace(tree: HPTree, rng: random.Random, rec_budget: int = 3):
    """One random derivation as a tuple of event paths."""

    def interleave(parts):
        slots = []
        for i, part in enumerate(parts):
            slots.extend([i] * len(part))
        rng.shuffle(slots)
        cursors = [0] * len(parts)
        out = []
        for i in slots:
            out.append(parts[i][cursors[i]])
            cursors[i] += 1
        return out

    def walk(node: HPTree, env: dict, budget: int) -> list:
        if isinstance(node, SilentLeaf):
            return []
        if isinstance(node, ActivityLeaf):
            return [(node.activity,)]
        if isinstance(node, RecursionLeaf):
            return walk(env[node.name], env, budget - 1)
        if isinstance(node, NamedSubtree):
            child_env = dict(env)
            child_env[node.name] = node
            inner = walk(node.child, child_env, budget)
            if not inner:
                return [(node.name,)]
            return [(node.name,) + ev for ev in inner]
        if node.op is Op.XOR:
            choices = list(node.children)
            if budget <= 0:
                grounded = [c for c in choices if not _has_free_recursion(c)]
                if grounded:
                    choices = grounded
            return walk(rng.choice(choices), env, budget)
        if node.op is Op.SEQ:
            out = []
            for child in node.children:
                out.extend(walk(child, env, budget))
            return out
        if node.op is Op.PAR:
            return interleave([walk(c, env, budget) for c in node.children])
        out = walk(node.children[0], env, budget)
        while rng.random() < 0.35 and len(out) < 64:
            redo = rng.choice(node.children[1:])
            out.extend(walk(redo, env, budget))
            out.extend(walk(node.children[0], env, budget))
        return out

    return tuple(walk(tree, {}, rec_budget))


def sample_log(tree: HPTree, seed: int, n_traces: int, rec_budget: int = 3) -> HierLog:
    rng = random.Random(seed)
    return HierLog.from_paths(
        [sample_trace(tree, rng, rec_budget) for _ in range(n_traces)]
    )


def random_hier_log(seed: int, size: int = 6, n_traces: int = 12) -> HierLog:
    """A seeded random hierarchical log: sampled runs of a random model."""
    tree = gen_model(seed, size)
    return sample_log(tree, seed + 1, n_traces)
