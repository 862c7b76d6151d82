"""Workflow-net construction from process trees, PNML serialization, and a
small reachability-based firing-sequence enumerator used for verification.

Activity leaves expand to a start/end transition pair around a place, and a
named subtree wraps its child between its own start/end pair, so a firing
sequence reads as a flat start/complete log whose interval nesting recovers
the hierarchical trace.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from xml.sax.saxutils import quoteattr

from .errors import RecursionNotRepresentableError
from .ptree import (
    ActivityLeaf,
    HPTree,
    NamedSubtree,
    Op,
    Operator,
    RecursionLeaf,
    SilentLeaf,
    walk,
)


@dataclass(frozen=True)
class Transition:
    tid: str
    label: str | None  # None for silent transitions


@dataclass
class PetriNet:
    places: list[str] = field(default_factory=list)
    transitions: list[Transition] = field(default_factory=list)
    arcs: list[tuple[str, str]] = field(default_factory=list)
    initial_marking: dict[str, int] = field(default_factory=dict)
    final_marking: dict[str, int] = field(default_factory=dict)

    def pre(self, tid: str) -> list[str]:
        return [src for src, dst in self.arcs if dst == tid]

    def post(self, tid: str) -> list[str]:
        return [dst for src, dst in self.arcs if src == tid]


class _Builder:
    def __init__(self):
        self.net = PetriNet()
        self._n = 0

    def place(self) -> str:
        pid = f"p{self._n}"
        self._n += 1
        self.net.places.append(pid)
        return pid

    def transition(self, label: str | None) -> str:
        tid = f"t{self._n}"
        self._n += 1
        self.net.transitions.append(Transition(tid, label))
        return tid

    def arc(self, src: str, dst: str) -> None:
        self.net.arcs.append((src, dst))

    def silent(self, p_in: str, p_out: str) -> None:
        t = self.transition(None)
        self.arc(p_in, t)
        self.arc(t, p_out)

    def pair(self, name: str, p_in: str, p_out: str) -> None:
        start = self.transition(f"{name}+start")
        mid = self.place()
        end = self.transition(f"{name}+end")
        self.arc(p_in, start)
        self.arc(start, mid)
        self.arc(mid, end)
        self.arc(end, p_out)

    def build(self, node: HPTree, p_in: str, p_out: str) -> None:
        if isinstance(node, SilentLeaf):
            self.silent(p_in, p_out)
            return
        if isinstance(node, ActivityLeaf):
            self.pair(node.activity, p_in, p_out)
            return
        if isinstance(node, NamedSubtree):
            start = self.transition(f"{node.name}+start")
            q_in = self.place()
            q_out = self.place()
            end = self.transition(f"{node.name}+end")
            self.arc(p_in, start)
            self.arc(start, q_in)
            self.build(node.child, q_in, q_out)
            self.arc(q_out, end)
            self.arc(end, p_out)
            return
        assert isinstance(node, Operator)
        if node.op is Op.SEQ:
            cur = p_in
            for child in node.children[:-1]:
                nxt = self.place()
                self.build(child, cur, nxt)
                cur = nxt
            self.build(node.children[-1], cur, p_out)
        elif node.op is Op.XOR:
            for child in node.children:
                self.build(child, p_in, p_out)
        elif node.op is Op.PAR:
            fork = self.transition(None)
            join = self.transition(None)
            self.arc(p_in, fork)
            self.arc(join, p_out)
            for child in node.children:
                c_in = self.place()
                c_out = self.place()
                self.arc(fork, c_in)
                self.build(child, c_in, c_out)
                self.arc(c_out, join)
        else:  # structured loop, isolated so redo paths cannot leak tokens out
            b_in = self.place()
            b_out = self.place()
            self.silent(p_in, b_in)
            self.build(node.children[0], b_in, b_out)
            self.silent(b_out, p_out)
            for redo in node.children[1:]:
                self.build(redo, b_out, b_in)


def tree_to_net(tree: HPTree) -> PetriNet:
    """Compile a recursion-free tree into a workflow net."""
    for node in walk(tree):
        if isinstance(node, RecursionLeaf):
            raise RecursionNotRepresentableError(
                f"recursion leaf rec:{node.name} has no finite net encoding; "
                "depth-filter or unfold the model first",
                name=node.name,
            )
    builder = _Builder()
    source = builder.place()
    sink = builder.place()
    builder.build(tree, source, sink)
    builder.net.initial_marking = {source: 1}
    builder.net.final_marking = {sink: 1}
    return builder.net


def to_pnml(tree: HPTree) -> bytes:
    """Serialize the tree's workflow net in the basic PNML subset."""
    net = tree_to_net(tree)
    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write('<pnml xmlns="http://www.pnml.org/version-2009/grammar/pnml">\n')
    out.write('  <net id="net1" type="http://www.pnml.org/version-2009/grammar/ptnet">\n')
    out.write('    <page id="page1">\n')
    for pid in net.places:
        out.write(f'      <place id={quoteattr(pid)}>\n')
        if net.initial_marking.get(pid):
            out.write(
                f"        <initialMarking><text>{net.initial_marking[pid]}</text>"
                "</initialMarking>\n"
            )
        out.write("      </place>\n")
    for trans in net.transitions:
        out.write(f'      <transition id={quoteattr(trans.tid)}>\n')
        if trans.label is not None:
            label = trans.label.replace("&", "&amp;").replace("<", "&lt;")
            out.write(f"        <name><text>{label}</text></name>\n")
        out.write("      </transition>\n")
    for i, (src, dst) in enumerate(net.arcs):
        out.write(
            f'      <arc id="a{i}" source={quoteattr(src)} target={quoteattr(dst)}/>\n'
        )
    out.write("    </page>\n")
    out.write('    <finalmarkings>\n      <marking>\n')
    for pid, count in net.final_marking.items():
        out.write(f'        <place idref={quoteattr(pid)}><text>{count}</text></place>\n')
    out.write("      </marking>\n    </finalmarkings>\n")
    out.write("  </net>\n</pnml>\n")
    return out.getvalue().encode("utf-8")


def firing_sequences(net: PetriNet, max_firings: int = 100, max_sequences: int = 20000):
    """All complete labeled firing sequences with at most `max_firings` steps.

    Brute-force reachability for verification on small nets only.
    """
    pre: dict[str, tuple[str, ...]] = {}
    post: dict[str, tuple[str, ...]] = {}
    for trans in net.transitions:
        pre[trans.tid] = tuple(net.pre(trans.tid))
        post[trans.tid] = tuple(net.post(trans.tid))
    label = {t.tid: t.label for t in net.transitions}
    final = frozenset(
        (p, c) for p, c in net.final_marking.items() if c
    )
    start = frozenset((p, c) for p, c in net.initial_marking.items() if c)
    results: set[tuple[str, ...]] = set()
    seen_cut: set = set()
    stack = [(start, (), 0)]
    while stack and len(results) < max_sequences:
        marking, labels, steps = stack.pop()
        if marking == final:
            results.add(labels)
        if steps >= max_firings:
            continue
        cut_key = (marking, labels)
        if cut_key in seen_cut:
            continue
        seen_cut.add(cut_key)
        held = dict(marking)
        for trans in net.transitions:
            needs = pre[trans.tid]
            if all(held.get(p, 0) >= 1 for p in needs):
                nxt = dict(held)
                for p in needs:
                    nxt[p] -= 1
                for p in post[trans.tid]:
                    nxt[p] = nxt.get(p, 0) + 1
                frozen = frozenset((p, c) for p, c in nxt.items() if c)
                lbl = label[trans.tid]
                stack.append(
                    (frozen, labels + (lbl,) if lbl else labels, steps + 1)
                )
    return results


def check_workflow_shape(net: PetriNet) -> list[str]:
    """Diagnostics for the workflow-net invariants; empty list means clean."""
    problems = []
    place_set = set(net.places)
    trans_set = {t.tid for t in net.transitions}
    for src, dst in net.arcs:
        ok = (src in place_set and dst in trans_set) or (
            src in trans_set and dst in place_set
        )
        if not ok:
            problems.append(f"arc {src}->{dst} is not place-transition bipartite")
    if list(net.initial_marking.values()) != [1]:
        problems.append("expected exactly one initially marked place")
    if list(net.final_marking.values()) != [1]:
        problems.append("expected exactly one finally marked place")
    sources = [p for p in net.places if not any(d == p for _, d in net.arcs)]
    sinks = [p for p in net.places if not any(s == p for s, _ in net.arcs)]
    if sources != list(net.initial_marking):
        problems.append(f"source places {sources} differ from initial marking")
    if sinks != list(net.final_marking):
        problems.append(f"sink places {sinks} differ from final marking")
    # every node on a path from source to sink
    fwd: dict[str, set[str]] = {}
    back: dict[str, set[str]] = {}
    for src, dst in net.arcs:
        fwd.setdefault(src, set()).add(dst)
        back.setdefault(dst, set()).add(src)

    def reach(adj, origin):
        seen = {origin}
        todo = [origin]
        while todo:
            for nxt in adj.get(todo.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    if net.initial_marking and net.final_marking:
        from_source = reach(fwd, next(iter(net.initial_marking)))
        to_sink = reach(back, next(iter(net.final_marking)))
        for node in place_set | trans_set:
            if node not in from_source or node not in to_sink:
                problems.append(f"node {node} is off every source-to-sink path")
    return problems
