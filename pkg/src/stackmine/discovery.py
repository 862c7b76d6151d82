"""Divide-and-conquer discovery of hierarchical process trees.

Three entry points share one recursive core: `naive_discover` descends into
named subtrees inline, `rad_discover` adds context paths and delayed discovery
so recursion is modeled explicitly, and `flat_discover` ignores hierarchy
altogether (each event collapsed to its dotted path) as a baseline.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .dfg import build_dfg_weighted, filter_infrequent, find_cut, split_log_weighted
from .logs import HierLog, PathTrace, log_alphabet, log_depth
from .ptree import (
    TAU,
    ActivityLeaf,
    HPTree,
    NamedSubtree,
    Op,
    Operator,
    RecursionLeaf,
    canonical,
)
from .rewrite import reduce_tree

ContextPath = tuple[str, ...]


@dataclass(frozen=True)
class DiscoveryConfig:
    paths: float = 1.0  # frequency cutoff; 1.0 keeps all behavior
    mode: str = "rad"  # naive | rad | flat

    def __post_init__(self):
        if not 0.0 <= self.paths <= 1.0:
            raise ValueError("paths must lie in [0, 1]")
        if self.mode not in ("naive", "rad", "flat"):
            raise ValueError(f"unknown discovery mode: {self.mode!r}")

    @staticmethod
    def from_dict(data: dict) -> "DiscoveryConfig":
        return DiscoveryConfig(
            paths=float(data.get("paths", 1.0)), mode=data.get("mode", "rad")
        )

    def to_dict(self) -> dict:
        return {"mode": self.mode, "paths": self.paths}


@dataclass(frozen=True)
class _Placeholder:
    """Stand-in emitted during delayed discovery; replaced when models are
    glued together at the end of the fixpoint."""

    name: str


@dataclass
class _Sublog:
    traces: Counter = field(default_factory=Counter)
    model: HPTree | None = None
    dirty: bool = True
    changes: int = 0


class SublogStore:
    """Sublogs and partial models keyed by context path.

    Unions are idempotent (pointwise multiplicity maximum), so sublogs only
    grow and reprocessing an unchanged projection never re-dirties a path.
    """

    def __init__(self):
        self.entries: dict[ContextPath, _Sublog] = {}

    def init_root(self, traces) -> None:
        entry = _Sublog(traces=Counter(traces))
        self.entries[()] = entry

    def union(self, path: ContextPath, incoming: Counter) -> bool:
        entry = self.entries.get(path)
        if entry is None:
            entry = _Sublog(traces=Counter())
            self.entries[path] = entry
        changed = False
        for trace, count in incoming.items():
            if entry.traces[trace] < count:
                entry.traces[trace] = count
                changed = True
        if changed:
            entry.changes += 1
            entry.dirty = True
        return changed

    def dirty_paths(self) -> list[ContextPath]:
        return [p for p, e in self.entries.items() if e.dirty]

    def log(self, path: ContextPath) -> Counter:
        return self.entries[path].traces

    def change_counts(self) -> dict[ContextPath, int]:
        return {p: e.changes for p, e in self.entries.items()}

    def to_json(self) -> str:
        payload = [
            {
                "path": list(path),
                "traces": [
                    [list(event) for event in trace]
                    for trace in sorted(entry.traces.elements())
                ],
            }
            for path, entry in sorted(self.entries.items())
        ]
        return json.dumps(payload, indent=2)


@dataclass
class DiscoveryStats:
    """Instrumentation backing the termination and complexity bounds."""

    max_stack_depth: int = 0
    runs: int = 0
    sublog_changes: dict[ContextPath, int] = field(default_factory=dict)

    def observe_depth(self, depth: int) -> None:
        self.max_stack_depth = max(self.max_stack_depth, depth)


@dataclass
class DiscoveryResult:
    tree: HPTree
    stats: DiscoveryStats
    store: SublogStore | None = None

    def sublog(self, *path: str) -> Counter:
        assert self.store is not None
        return Counter(self.store.entries[tuple(path)].traces)


def _base_case_weighted(counts: Counter, paths: float) -> HPTree | None:
    total = sum(counts.values())
    if not total:
        return TAU
    n_empty = counts.get((), 0)
    if n_empty == total:
        return TAU
    if n_empty and paths < 1.0 and n_empty < (1.0 - paths) * total:
        counts = Counter({t: c for t, c in counts.items() if t})
        n_empty = 0
    acts = {e[0] for t in counts for e in t}
    singles = all(len(t) <= 1 and all(len(e) == 1 for e in t) for t in counts)
    if len(acts) == 1 and singles:
        leaf = ActivityLeaf(next(iter(acts)))
        if n_empty:
            return canonical(Operator(Op.XOR, (leaf, TAU)))
        return leaf
    return None


def discover_base_case(traces, paths: float = 1.0) -> HPTree | None:
    """Base cases: all-empty logs give tau, single-activity logs give a leaf,
    and a mix of empty and single-activity traces gives xor(activity, tau).

    Under paths < 1.0 a minority share of empty traces below (1 - paths) is
    dropped before the test.  Returns None when no base case applies.
    """
    return _base_case_weighted(Counter(tuple(traces)), paths)


def _project1(counts: Counter) -> Counter:
    out: Counter = Counter()
    for trace, count in counts.items():
        out[tuple(e[1:] for e in trace if len(e) > 1)] += count
    return out


class _Engine:
    def __init__(self, config: DiscoveryConfig, store: SublogStore | None):
        self.config = config
        self.store = store
        self.stats = DiscoveryStats()

    def discover(self, counts: Counter, ctx: ContextPath, depth: int = 1) -> HPTree:
        self.stats.observe_depth(depth)
        total = sum(counts.values())
        if not total:
            return TAU
        n_empty = counts.get((), 0)
        if n_empty == total:
            return TAU
        if n_empty:
            rest = Counter({t: c for t, c in counts.items() if t})
            if self.config.paths < 1.0 and n_empty < (1.0 - self.config.paths) * total:
                counts = rest
            else:
                return Operator(
                    Op.XOR, (TAU, self.discover(rest, ctx, depth + 1))
                )
        acts = sorted({e[0] for t in counts for e in t})
        if len(acts) == 1:
            handled = self._uniform(acts[0], counts, ctx, depth)
            if handled is not None:
                return handled
        base = _base_case_weighted(counts, self.config.paths)
        if base is not None:
            return base
        dfg = filter_infrequent(build_dfg_weighted(counts), self.config.paths)
        cut = find_cut(dfg)
        if cut is None:
            return self._flower(acts, counts, ctx, depth)
        sublogs = split_log_weighted(counts, cut)
        if cut.op is Op.XOR:
            # filtering can strand a block without any assigned trace
            sublogs = [sl for sl in sublogs if sl]
            if len(sublogs) == 1:
                return self.discover(sublogs[0], ctx, depth + 1)
        children = tuple(
            self.discover(sub, ctx, depth + 1) for sub in sublogs
        )
        return Operator(cut.op, children)

    def _uniform(self, name: str, counts: Counter, ctx: ContextPath, depth: int) -> HPTree | None:
        """Named-subtree and recursion handling for a uniform level-1 activity.

        Only fires when stripping the shared name is invertible: a trace must
        be all-deeper or the lone bare event, otherwise a bare event would
        vanish under projection and the wrapped model could not regenerate it
        (the flower fall-through handles such traces event by event).
        """
        for t in counts:
            if len(t) == 1 and len(t[0]) == 1:
                continue
            if any(len(e) == 1 for e in t):
                return None
        deeper = any(len(e) > 1 for t in counts for e in t)
        if self.store is not None and name in ctx:
            target = ctx[: ctx.index(name) + 1]
            self.store.union(target, _project1(counts))
            return RecursionLeaf(name)
        if not deeper:
            return None  # plain base case or flower will take it
        if self.store is None:
            return NamedSubtree(name, self.discover(_project1(counts), ctx, depth + 1))
        self.store.union(ctx + (name,), _project1(counts))
        return _Placeholder(name)

    def _flower(self, acts, counts: Counter, ctx: ContextPath, depth: int) -> HPTree:
        """Fall-through: a loop of choices over the level-1 alphabet, with
        deeper structure hung under its own named subtree per activity."""
        branches = []
        for name in acts:
            events: Counter = Counter()
            for trace, count in counts.items():
                for e in trace:
                    if e[0] == name:
                        events[e] += count
            if all(len(e) == 1 for e in events):
                branches.append(ActivityLeaf(name))
            else:
                singles = Counter({(e,): c for e, c in events.items()})
                handled = self._uniform(name, singles, ctx, depth)
                assert handled is not None
                branches.append(handled)
        body = Operator(Op.XOR, tuple(branches) + (TAU,))
        return Operator(Op.LOOP, (body, TAU))


def _glue(tree, store: SublogStore, ctx: ContextPath):
    if isinstance(tree, _Placeholder):
        target = ctx + (tree.name,)
        inner = _glue(store.entries[target].model, store, target)
        return NamedSubtree(tree.name, inner)
    if isinstance(tree, NamedSubtree):
        return NamedSubtree(tree.name, _glue(tree.child, store, ctx))
    if isinstance(tree, Operator):
        return Operator(tree.op, tuple(_glue(c, store, ctx) for c in tree.children))
    return tree


def _as_path_traces(log) -> tuple[PathTrace, ...]:
    if isinstance(log, HierLog):
        return log.path_view()
    return tuple(tuple(tuple(e) for e in t) for t in log)


def _as_counts(log) -> Counter:
    return Counter(_as_path_traces(log))


def naive_discover_details(log, config: DiscoveryConfig | None = None) -> DiscoveryResult:
    config = config or DiscoveryConfig(mode="naive")
    engine = _Engine(config, store=None)
    tree = engine.discover(_as_counts(log), ())
    return DiscoveryResult(tree=reduce_tree(canonical(tree)), stats=engine.stats)


def naive_discover(log, config: DiscoveryConfig | None = None) -> HPTree:
    return naive_discover_details(log, config).tree


def rad_discover_details(
    log, config: DiscoveryConfig | None = None, _order=None
) -> DiscoveryResult:
    """Recursion-aware discovery: a fixpoint of per-context-path discovery runs
    over a store of growing sublogs, glued together once stable.

    `_order` reorders each round's dirty paths (used to assert that the result
    is schedule-independent); default is breadth-first by path length.
    """
    config = config or DiscoveryConfig(mode="rad")
    store = SublogStore()
    store.init_root(_as_counts(log))
    engine = _Engine(config, store=store)
    while True:
        dirty = store.dirty_paths()
        if not dirty:
            break
        dirty.sort(key=lambda p: (len(p), p))
        if _order is not None:
            dirty = _order(dirty)
        for path in dirty:
            entry = store.entries[path]
            entry.dirty = False
            engine.stats.runs += 1
            entry.model = engine.discover(store.log(path), path)
    tree = _glue(store.entries[()].model, store, ())
    engine.stats.sublog_changes = store.change_counts()
    return DiscoveryResult(tree=reduce_tree(canonical(tree)), stats=engine.stats, store=store)


def rad_discover(log, config: DiscoveryConfig | None = None) -> HPTree:
    return rad_discover_details(log, config).tree


def flatten_events(log) -> tuple[PathTrace, ...]:
    """Collapse each event to one opaque level-1 activity (its dotted path)."""
    return tuple(
        tuple((".".join(e),) for e in t) for t in _as_path_traces(log)
    )


def flatten_log(log) -> HierLog:
    """The depth-1 view of a log that flat discovery operates on; needed when
    checking a flat model against behavior from a deeper log."""
    return HierLog.from_paths(flatten_events(log))


def flat_discover_details(log, config: DiscoveryConfig | None = None) -> DiscoveryResult:
    config = config or DiscoveryConfig(mode="flat")
    engine = _Engine(config, store=None)
    tree = engine.discover(Counter(flatten_events(log)), ())
    return DiscoveryResult(tree=reduce_tree(canonical(tree)), stats=engine.stats)


def flat_discover(log, config: DiscoveryConfig | None = None) -> HPTree:
    return flat_discover_details(log, config).tree


def discover(log, config: DiscoveryConfig) -> HPTree:
    if config.mode == "naive":
        return naive_discover(log, config)
    if config.mode == "flat":
        return flat_discover(log, config)
    return rad_discover(log, config)


def complexity_budget(log) -> tuple[int, int]:
    """The instrumentation limits: depth of the log and size of its alphabet."""
    if isinstance(log, HierLog):
        return log_depth(log), len(log_alphabet(log))
    depth = max((len(e) for t in log for e in t), default=0)
    sigma = {a for t in log for e in t for a in e}
    return depth, len(sigma)
