"""Language semantics for hierarchical process trees.

`language` enumerates the bounded trace set; `accepts` decides membership of a
single trace by memoized recursive descent without enumerating the language.
Traces are tuples of events, each event a tuple of activity names (outermost
level first).

A named subtree prefixes its name onto every event its child produces; a child
run that produces no events still yields the single bare event `(name,)`.
Recursion leaves re-enter the nearest enclosing named subtree with the same
name.  During enumeration they are carried as single marker events and spliced
with the enclosing subtree's own language, innermost names first; because a
marker travels through interleavings as one unit, its expansion always occupies
a contiguous run of the enclosing subtree's trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .logs import HierTrace, PathEvent, PathTrace
from .ptree import (
    ActivityLeaf,
    HPTree,
    NamedSubtree,
    Op,
    Operator,
    RecursionLeaf,
    SilentLeaf,
    children_of,
    require_well_formed,
)


@dataclass(frozen=True)
class LangBound:
    max_trace_len: int = 8
    max_recursion_depth: int = 3

    def __post_init__(self):
        if self.max_trace_len < 0 or self.max_recursion_depth < 0:
            raise ValueError("bounds must be >= 0")

    def doubled(self) -> "LangBound":
        return LangBound(self.max_trace_len * 2, self.max_recursion_depth * 2)


# --- bounded enumeration ------------------------------------------------------


@dataclass(frozen=True)
class _Marker:
    """Pending recursion re-entry, carrying the path prefix accumulated from
    named subtrees crossed between the recursion leaf and its binding."""

    prefix: tuple[str, ...]
    name: str


_MarkedTrace = tuple  # of PathEvent | _Marker


def _apply_prefix(prefix: tuple[str, ...], sym):
    if isinstance(sym, _Marker):
        return _Marker(prefix + sym.prefix, sym.name)
    return prefix + sym


def _prefix_trace(name: str, trace: _MarkedTrace) -> _MarkedTrace:
    if not trace:
        return ((name,),)
    return tuple(_apply_prefix((name,), sym) for sym in trace)


def _has_marker(trace: _MarkedTrace, name: str) -> bool:
    return any(isinstance(s, _Marker) and s.name == name for s in trace)


def _concat_sets(parts: list[frozenset], maxlen: int) -> frozenset:
    acc = {()}
    for part in parts:
        acc = {a + b for a in acc for b in part if len(a) + len(b) <= maxlen}
        if not acc:
            return frozenset()
    return frozenset(acc)


def _shuffles(a: _MarkedTrace, b: _MarkedTrace) -> set:
    if not a:
        return {b}
    if not b:
        return {a}
    out = set()
    for t in _shuffles(a[1:], b):
        out.add((a[0],) + t)
    for t in _shuffles(a, b[1:]):
        out.add((b[0],) + t)
    return out


def _expand(trace: _MarkedTrace, name: str, pool: set, maxlen: int) -> Iterable[_MarkedTrace]:
    """All ways of splicing pool traces at this name's marker slots."""
    slots = [i for i, s in enumerate(trace) if isinstance(s, _Marker) and s.name == name]
    results = [()]
    cursor = 0
    for slot in slots:
        marker = trace[slot]
        segment = trace[cursor:slot]
        extended = []
        for head in results:
            base = head + segment
            if len(base) > maxlen:
                continue
            for repl in pool:
                spliced = tuple(_apply_prefix(marker.prefix, sym) for sym in repl)
                cand = base + spliced
                if len(cand) <= maxlen:
                    extended.append(cand)
        results = extended
        cursor = slot + 1
        if not results:
            return
    tail = trace[cursor:]
    for head in results:
        cand = head + tail
        if len(cand) <= maxlen:
            yield cand


def _resolve_named(name: str, traces: frozenset, maxlen: int, maxdepth: int) -> frozenset:
    base = []
    pending = []
    for t in traces:
        (pending if _has_marker(t, name) else base).append(t)
    pool = {_prefix_trace(name, t) for t in base}
    pool = {t for t in pool if len(t) <= maxlen}
    for _ in range(maxdepth):
        new = set()
        for t in pending:
            for expansion in _expand(t, name, pool, maxlen):
                full = _prefix_trace(name, expansion)
                if len(full) <= maxlen and full not in pool:
                    new.add(full)
        if not new:
            break
        pool |= new
    return frozenset(pool)


def _enum(node: HPTree, maxlen: int, maxdepth: int) -> frozenset:
    if isinstance(node, SilentLeaf):
        return frozenset({()})
    if isinstance(node, ActivityLeaf):
        return frozenset({((node.activity,),)}) if maxlen >= 1 else frozenset()
    if isinstance(node, RecursionLeaf):
        return frozenset({(_Marker((), node.name),)}) if maxlen >= 1 else frozenset()
    if isinstance(node, NamedSubtree):
        inner = _enum(node.child, maxlen, maxdepth)
        return _resolve_named(node.name, inner, maxlen, maxdepth)
    assert isinstance(node, Operator)
    langs = [_enum(c, maxlen, maxdepth) for c in node.children]
    if node.op is Op.XOR:
        out = set()
        for lang in langs:
            out |= lang
        return frozenset(out)
    if node.op is Op.SEQ:
        return _concat_sets(langs, maxlen)
    if node.op is Op.PAR:
        acc = {()}
        for lang in langs:
            nxt = set()
            for a in acc:
                for b in lang:
                    if len(a) + len(b) > maxlen:
                        continue
                    nxt |= _shuffles(a, b)
            acc = nxt
        return frozenset(acc)
    # structured loop: body, then any number of (redo, body) rounds
    body = langs[0]
    redo_lang = set()
    for lang in langs[1:]:
        redo_lang |= lang
    acc = set(body)
    frontier = set(acc)
    while frontier:
        new = set()
        for t in frontier:
            for r in redo_lang:
                for b in body:
                    cand = t + r + b
                    if len(cand) <= maxlen and cand not in acc:
                        new.add(cand)
        acc |= new
        frontier = new
    return frozenset(acc)


def language(tree: HPTree, bound: LangBound) -> frozenset[PathTrace]:
    """All traces of the tree with at most `max_trace_len` events and at most
    `max_recursion_depth` nested recursion splices."""
    require_well_formed(tree)
    return frozenset(_enum(tree, bound.max_trace_len, bound.max_recursion_depth))


# --- membership ---------------------------------------------------------------


def _to_path_trace(trace) -> PathTrace:
    if isinstance(trace, HierTrace):
        return trace.path_view()
    return tuple(tuple(e) for e in trace)


class _Matcher:
    """Memoized recursive-descent membership for one tree.

    State is (node id, strip depth, segment): the segment is an ordered tuple
    of event indexes into the input trace, each presenting its path with the
    first `strip` activities removed.  Parallel nodes distribute positions to
    children.  A recursion leaf re-enters its binding named subtree, which
    strips one more level, so total stripped symbols strictly grow and the
    descent terminates; its segment must additionally form a contiguous run of
    the binding subtree's segment (the anchor), since a recursion expansion is
    spliced as one block.
    """

    def __init__(self, tree: HPTree):
        require_well_formed(tree)
        self.nodes: list[HPTree] = []
        self.binding: list[dict[str, int]] = []
        self.child_ids: list[tuple[int, ...]] = []
        self._index(tree, {})
        self.root = 0
        self.nullable = [self._nullable(i) for i in range(len(self.nodes))]
        self.heads: list[frozenset[str]] = [frozenset()] * len(self.nodes)
        for i in range(len(self.nodes) - 1, -1, -1):
            self.heads[i] = self._heads(i)
        self.free: list[frozenset[str]] = [frozenset()] * len(self.nodes)
        for i in range(len(self.nodes) - 1, -1, -1):
            self.free[i] = self._free(i)

    def _index(self, node: HPTree, env: dict[str, int]) -> int:
        idx = len(self.nodes)
        self.nodes.append(node)
        self.binding.append(dict(env))
        self.child_ids.append(())
        if isinstance(node, NamedSubtree):
            child_env = dict(env)
            child_env[node.name] = idx
            self.child_ids[idx] = (self._index(node.child, child_env),)
        else:
            self.child_ids[idx] = tuple(self._index(c, env) for c in children_of(node))
        return idx

    def _nullable(self, idx: int) -> bool:
        node = self.nodes[idx]
        if isinstance(node, SilentLeaf):
            return True
        if isinstance(node, (ActivityLeaf, RecursionLeaf, NamedSubtree)):
            return False
        kids = self.child_ids[idx]
        if node.op is Op.XOR:
            return any(self._nullable(k) for k in kids)
        if node.op is Op.LOOP:
            return self._nullable(kids[0])
        return all(self._nullable(k) for k in kids)

    def _heads(self, idx: int) -> frozenset[str]:
        node = self.nodes[idx]
        if isinstance(node, SilentLeaf):
            return frozenset()
        if isinstance(node, ActivityLeaf):
            return frozenset({node.activity})
        if isinstance(node, (NamedSubtree, RecursionLeaf)):
            return frozenset({node.name})
        out = frozenset()
        for k in self.child_ids[idx]:
            out |= self.heads[k]
        return out

    def _free(self, idx: int) -> frozenset[str]:
        node = self.nodes[idx]
        if isinstance(node, RecursionLeaf):
            return frozenset({node.name})
        if isinstance(node, NamedSubtree):
            return self.free[self.child_ids[idx][0]] - {node.name}
        out = frozenset()
        for k in self.child_ids[idx]:
            out |= self.free[k]
        return out

    # anchors: name -> the position tuple matched by the named subtree that
    # currently binds it; only names free in the subtree matter for the memo.

    def _anchor_key(self, idx: int, anchors: dict) -> tuple:
        names = self.free[idx]
        if not names:
            return ()
        return tuple((n, anchors[n]) for n in sorted(names))

    def match(self, trace: PathTrace) -> bool:
        self.trace = trace
        self.memo: dict = {}
        return self._match(self.root, 0, tuple(range(len(trace))), {})

    def _event(self, pos: int, strip: int) -> PathEvent:
        return self.trace[pos][strip:]

    def _match(self, idx: int, strip: int, seg: tuple[int, ...], anchors: dict) -> bool:
        key = (idx, strip, seg, self._anchor_key(idx, anchors))
        cached = self.memo.get(key)
        if cached is not None:
            return cached if cached != "busy" else False
        self.memo[key] = "busy"
        result = self._match_inner(idx, strip, seg, anchors)
        self.memo[key] = result
        return result

    def _match_inner(self, idx: int, strip: int, seg, anchors: dict) -> bool:
        node = self.nodes[idx]
        if isinstance(node, SilentLeaf):
            return seg == ()
        if isinstance(node, ActivityLeaf):
            return len(seg) == 1 and self._event(seg[0], strip) == (node.activity,)
        if isinstance(node, RecursionLeaf):
            if not seg:
                return False
            anchor = anchors[node.name]
            start = anchor.index(seg[0]) if seg[0] in anchor else -1
            if start < 0 or anchor[start:start + len(seg)] != seg:
                return False  # expansion blocks are contiguous in the anchor
            return self._match(self.binding[idx][node.name], strip, seg, anchors)
        if isinstance(node, NamedSubtree):
            if not seg:
                return False
            name = node.name
            bare = 0
            for pos in seg:
                ev = self._event(pos, strip)
                if not ev or ev[0] != name:
                    return False
                if len(ev) == 1:
                    bare += 1
            child = self.child_ids[idx][0]
            if bare:
                # a bare (name,) event only arises from a childless run
                return len(seg) == 1 and self.nullable[child]
            sub_anchors = dict(anchors)
            sub_anchors[name] = seg
            return self._match(child, strip + 1, seg, sub_anchors)
        kids = self.child_ids[idx]
        if node.op is Op.XOR:
            return any(self._match(k, strip, seg, anchors) for k in kids)
        if node.op is Op.SEQ:
            return self._match_seq(idx, 0, strip, seg, 0, anchors)
        if node.op is Op.LOOP:
            return self._match_loop(idx, strip, seg, 0, anchors)
        return self._match_par(kids, strip, seg, anchors)

    def _claimable(self, kid: int, strip: int, pos: int) -> bool:
        ev = self._event(pos, strip)
        return bool(ev) and ev[0] in self.heads[kid]

    def _match_seq(self, idx: int, ki: int, strip: int, seg, offset: int, anchors) -> bool:
        key = ("seq", idx, ki, strip, seg, offset, self._anchor_key(idx, anchors))
        cached = self.memo.get(key)
        if cached is not None:
            return cached if cached != "busy" else False
        self.memo[key] = "busy"
        kids = self.child_ids[idx]
        result = False
        if ki == len(kids):
            result = offset == len(seg)
        else:
            kid = kids[ki]
            if ki == len(kids) - 1:
                ends = (len(seg),)
            else:
                ends = range(offset, len(seg) + 1)
            for end in ends:
                if end > offset and not self._claimable(kid, strip, seg[offset]):
                    if len(ends) > 1:
                        break
                    continue
                if self._match(kid, strip, seg[offset:end], anchors) and self._match_seq(
                    idx, ki + 1, strip, seg, end, anchors
                ):
                    result = True
                    break
        self.memo[key] = result
        return result

    def _match_loop(self, idx: int, strip: int, seg, offset: int, anchors) -> bool:
        key = ("loop", idx, strip, seg, offset, self._anchor_key(idx, anchors))
        cached = self.memo.get(key)
        if cached is not None:
            return cached if cached != "busy" else False
        self.memo[key] = "busy"
        kids = self.child_ids[idx]
        body, redos = kids[0], kids[1:]
        result = False
        for end in range(offset, len(seg) + 1):
            if not self._match(body, strip, seg[offset:end], anchors):
                continue
            if end == len(seg):
                result = True
                break
            for mid in range(end, len(seg) + 1):
                redo_seg = seg[end:mid]
                if any(self._match(r, strip, redo_seg, anchors) for r in redos):
                    if self._match_loop(idx, strip, seg, mid, anchors):
                        result = True
                        break
            if result:
                break
        self.memo[key] = result
        return result

    def _match_par(self, kids, strip: int, seg, anchors) -> bool:
        n = len(kids)

        def assign(i: int, buckets: tuple[tuple[int, ...], ...]) -> bool:
            if i == len(seg):
                return all(self._match(k, strip, b, anchors) for k, b in zip(kids, buckets))
            pos = seg[i]
            tried = set()
            for ci in range(n):
                if not self._claimable(kids[ci], strip, pos):
                    continue
                nxt = buckets[:ci] + (buckets[ci] + (pos,),) + buckets[ci + 1:]
                if nxt in tried:
                    continue
                tried.add(nxt)
                if assign(i + 1, nxt):
                    return True
            return False

        return assign(0, tuple(() for _ in kids))


_matcher_cache: dict[int, tuple[HPTree, _Matcher]] = {}


def matcher_for(tree: HPTree) -> _Matcher:
    key = id(tree)
    hit = _matcher_cache.get(key)
    if hit is not None and hit[0] is tree:
        return hit[1]
    matcher = _Matcher(tree)
    if len(_matcher_cache) > 256:
        _matcher_cache.clear()
    _matcher_cache[key] = (tree, matcher)
    return matcher


def accepts(tree: HPTree, trace) -> bool:
    """True iff the trace belongs to the tree's language."""
    return matcher_for(tree).match(_to_path_trace(trace))
