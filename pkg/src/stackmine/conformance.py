"""Fitness, precision, and directly-follows completeness checks.

Fitness is boolean per-trace membership weighted by multiset multiplicity.
Precision is an escaping-edges estimate over the prefix states of the bounded
language.  Completeness compares adjacency, start, end, and alphabet evidence
of the model's bounded language against the log, at every hierarchy level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .logs import HierLog, PathTrace
from .ptree import TAU, ActivityLeaf, Op, Operator, canonical
from .semantics import LangBound, language, matcher_for

END = "⊣"  # pseudo-activity marking trace completion in precision states


@dataclass(frozen=True)
class FitnessReport:
    trace_fitness: float
    accepted: int
    rejected: int
    verdicts: tuple[bool, ...] = ()

    def to_dict(self) -> dict:
        return {
            "trace_fitness": self.trace_fitness,
            "accepted": self.accepted,
            "rejected": self.rejected,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class PrecisionReport:
    precision: float
    visited_states: int
    escaping_edges: int
    enabled_edges: int

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "escaping_edges": self.escaping_edges,
            "enabled_edges": self.enabled_edges,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _as_path_traces(log) -> tuple[PathTrace, ...]:
    if isinstance(log, HierLog):
        return log.path_view()
    return tuple(tuple(tuple(e) for e in t) for t in log)


def fitness(tree, log) -> FitnessReport:
    traces = _as_path_traces(log)
    matcher = matcher_for(tree)
    cache: dict[PathTrace, bool] = {}
    verdicts = []
    for trace in traces:
        verdict = cache.get(trace)
        if verdict is None:
            verdict = matcher.match(trace)
            cache[trace] = verdict
        verdicts.append(verdict)
    accepted = sum(verdicts)
    rejected = len(verdicts) - accepted
    total = accepted + rejected
    return FitnessReport(
        trace_fitness=(accepted / total) if total else 1.0,
        accepted=accepted,
        rejected=rejected,
        verdicts=tuple(verdicts),
    )


class _Trie:
    __slots__ = ("children", "terminal")

    def __init__(self):
        self.children: dict = {}
        self.terminal = False


def _build_trie(traces) -> _Trie:
    root = _Trie()
    for trace in traces:
        node = root
        for event in trace:
            nxt = node.children.get(event)
            if nxt is None:
                nxt = _Trie()
                node.children[event] = nxt
            node = nxt
        node.terminal = True
    return root


def precision_estimate(tree, log, bound: LangBound | None = None) -> PrecisionReport:
    """Replay the log through the bounded acceptor's prefix states and count
    enabled versus taken continuations; an empty log scores 1.0."""
    bound = bound or LangBound()
    traces = _as_path_traces(log)
    root = _build_trie(language(tree, bound))
    taken: dict[int, set] = {}
    states: dict[int, _Trie] = {}
    for trace in traces:
        node = root
        for event in trace:
            states[id(node)] = node
            nxt = node.children.get(event)
            if nxt is None:
                break
            taken.setdefault(id(node), set()).add(event)
            node = nxt
        else:
            states[id(node)] = node
            if node.terminal:
                taken.setdefault(id(node), set()).add(END)
    enabled_total = 0
    escaping_total = 0
    for key, node in states.items():
        enabled = set(node.children)
        if node.terminal:
            enabled.add(END)
        took = taken.get(key, set())
        enabled_total += len(enabled)
        escaping_total += len(enabled - took)
    precision = 1.0 - (escaping_total / enabled_total) if enabled_total else 1.0
    return PrecisionReport(
        precision=precision,
        visited_states=len(states),
        escaping_edges=escaping_total,
        enabled_edges=enabled_total,
    )


def _project_paths(traces, i: int):
    return tuple(tuple(e[i:] for e in t if len(e) > i) for t in traces)


def _level_evidence(traces):
    pairs = set()
    starts = set()
    ends = set()
    for trace in traces:
        if not trace:
            continue
        heads = [e[0] for e in trace]
        starts.add(heads[0])
        ends.add(heads[-1])
        pairs.update(zip(heads, heads[1:]))
    return pairs, starts, ends


def is_df_complete(log, tree, bound: LangBound | None = None) -> bool:
    """True iff the log carries every directly-follows pair, start, end, and
    activity of the model's bounded language, at every hierarchy level."""
    bound = bound or LangBound()
    log_traces = _as_path_traces(log)
    model_traces = language(tree, bound)
    model_alphabet = {a for t in model_traces for e in t for a in e}
    log_alphabet = {a for t in log_traces for e in t for a in e}
    if not model_alphabet <= log_alphabet:
        return False
    depth = max((len(e) for t in model_traces for e in t), default=0)
    for level in range(depth):
        m_pairs, m_starts, m_ends = _level_evidence(_project_paths(model_traces, level))
        l_pairs, l_starts, l_ends = _level_evidence(_project_paths(log_traces, level))
        if not (m_pairs <= l_pairs and m_starts <= l_starts and m_ends <= l_ends):
            return False
    return True


def exact_trace_model(log):
    """The literal model of a log: a choice over its distinct traces, each a
    sequence of its events (flattened to level-1 labels).  Useful as the
    maximally precise baseline in precision comparisons."""
    traces = sorted(set(_as_path_traces(log)))
    branches = []
    for trace in traces:
        if not trace:
            branches.append(TAU)
        elif len(trace) == 1:
            branches.append(ActivityLeaf(".".join(trace[0])))
        else:
            branches.append(
                Operator(Op.SEQ, tuple(ActivityLeaf(".".join(e)) for e in trace))
            )
    if not branches:
        return TAU
    if len(branches) == 1:
        return branches[0]
    return canonical(Operator(Op.XOR, tuple(branches)))


def flower_model(alphabet):
    """The maximally fitting, minimally precise fall-through over an alphabet."""
    branches = tuple(ActivityLeaf(a) for a in sorted(alphabet)) + (TAU,)
    return Operator(Op.LOOP, (Operator(Op.XOR, branches), TAU))
