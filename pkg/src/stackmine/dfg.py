"""Directly-follows graphs over one hierarchy level, cut detection, and log
splitting.

Cut detection follows the classic inductive-miner order: exclusive choice,
then sequence, then parallel, then loop.  Partitions are canonical: blocks
whose order carries no meaning are sorted by least activity name.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

from .errors import EmptyGraphError, UncoveredActivityError
from .logs import PathTrace
from .ptree import Op


@dataclass(frozen=True)
class Dfg:
    nodes: frozenset[str]
    edges: dict
    starts: dict
    ends: dict
    empty_traces: int = 0


@dataclass(frozen=True)
class Cut:
    op: Op
    partition: tuple[frozenset[str], ...]


def build_dfg_weighted(counts: Counter) -> Dfg:
    """Count level-1 adjacencies, starts and ends over a trace multiset;
    empty traces are tallied separately."""
    nodes = set()
    edges: Counter = Counter()
    starts: Counter = Counter()
    ends: Counter = Counter()
    empty = 0
    for trace, count in counts.items():
        if not trace:
            empty += count
            continue
        heads = [e[0] for e in trace]
        nodes.update(heads)
        starts[heads[0]] += count
        ends[heads[-1]] += count
        for a, b in zip(heads, heads[1:]):
            edges[(a, b)] += count
    return Dfg(frozenset(nodes), dict(edges), dict(starts), dict(ends), empty)


def build_dfg(traces) -> Dfg:
    if isinstance(traces, Counter):
        return build_dfg_weighted(traces)
    return build_dfg_weighted(Counter(tuple(traces)))


def filter_infrequent(dfg: Dfg, paths: float) -> Dfg:
    """Drop, per node, outgoing edges below (1 - paths) of its strongest one;
    the same rule prunes starts and ends.  Nodes are never dropped."""
    if not 0.0 <= paths <= 1.0:
        raise ValueError("paths must lie in [0, 1]")
    if paths >= 1.0:
        return dfg
    cutoff = 1.0 - paths
    out_max: dict[str, int] = defaultdict(int)
    for (a, _), freq in dfg.edges.items():
        out_max[a] = max(out_max[a], freq)
    edges = {
        (a, b): freq
        for (a, b), freq in dfg.edges.items()
        if freq >= cutoff * out_max[a]
    }
    max_start = max(dfg.starts.values(), default=0)
    starts = {a: c for a, c in dfg.starts.items() if c >= cutoff * max_start}
    max_end = max(dfg.ends.values(), default=0)
    ends = {a: c for a, c in dfg.ends.items() if c >= cutoff * max_end}
    return Dfg(dfg.nodes, edges, starts, ends, dfg.empty_traces)


def _components(nodes, pairs) -> list[set[str]]:
    """Connected components treating `pairs` as undirected edges."""
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[str, set] = defaultdict(set)
    for n in nodes:
        groups[find(n)].add(n)
    return list(groups.values())


def _sccs(nodes, edges) -> list[set[str]]:
    """Kosaraju strongly connected components (iterative, deterministic)."""
    fwd: dict[str, list[str]] = defaultdict(list)
    rev: dict[str, list[str]] = defaultdict(list)
    for a, b in edges:
        fwd[a].append(b)
        rev[b].append(a)
    order = []
    seen = set()
    for start in sorted(nodes):
        if start in seen:
            continue
        stack = [(start, iter(sorted(fwd[start])))]
        seen.add(start)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append((nxt, iter(sorted(fwd[nxt]))))
                    advanced = True
                    break
            if not advanced:
                order.append(node)
                stack.pop()
    comps = []
    assigned = set()
    for start in reversed(order):
        if start in assigned:
            continue
        comp = set()
        stack = [start]
        assigned.add(start)
        while stack:
            node = stack.pop()
            comp.add(node)
            for nxt in rev[node]:
                if nxt not in assigned:
                    assigned.add(nxt)
                    stack.append(nxt)
        comps.append(comp)
    return comps


def _sorted_blocks(blocks) -> tuple[frozenset[str], ...]:
    return tuple(sorted((frozenset(b) for b in blocks), key=min))


def _xor_cut(dfg: Dfg):
    comps = _components(dfg.nodes, dfg.edges.keys())
    if len(comps) < 2:
        return None
    return Cut(Op.XOR, _sorted_blocks(comps))


def _seq_cut(dfg: Dfg):
    blocks = [frozenset(c) for c in _sccs(dfg.nodes, dfg.edges.keys())]
    while True:
        n = len(blocks)
        if n < 2:
            return None
        index = {}
        for i, block in enumerate(blocks):
            for node in block:
                index[node] = i
        reach = [[False] * n for _ in range(n)]
        for a, b in dfg.edges:
            if index[a] != index[b]:
                reach[index[a]][index[b]] = True
        for k in range(n):
            for i in range(n):
                if reach[i][k]:
                    row_k = reach[k]
                    row_i = reach[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        # one union-find pass: merge incomparable pairs (transitively) and any
        # pair made mutually reachable by earlier merges
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        merged = False
        for i in range(n):
            for j in range(i + 1, n):
                if reach[i][j] != reach[j][i]:
                    continue
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
                    merged = True
        if not merged:
            ordered = sorted(range(n), key=lambda i: sum(reach[i]), reverse=True)
            return Cut(Op.SEQ, tuple(blocks[i] for i in ordered))
        grouped: dict[int, frozenset] = defaultdict(frozenset)
        for i in range(n):
            grouped[find(i)] |= blocks[i]
        blocks = list(grouped.values())


def _par_cut(dfg: Dfg):
    nodes = sorted(dfg.nodes)
    if len(nodes) < 2:
        return None
    missing = []
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            if (a, b) not in dfg.edges or (b, a) not in dfg.edges:
                missing.append((a, b))
    comps = [frozenset(c) for c in _components(nodes, missing)]
    if len(comps) < 2:
        return None
    start_set = set(dfg.starts)
    end_set = set(dfg.ends)
    good = [c for c in comps if c & start_set and c & end_set]
    bad = [c for c in comps if not (c & start_set and c & end_set)]
    if not good or (bad and len(good) < 2):
        return None
    if bad:
        merged = frozenset().union(good[0], *bad)
        comps = [merged] + good[1:]
    if len(comps) < 2:
        return None
    return Cut(Op.PAR, _sorted_blocks(comps))


def _loop_cut(dfg: Dfg):
    start_set = set(dfg.starts)
    end_set = set(dfg.ends)
    body = set(start_set | end_set)
    if not body:
        return None
    while True:
        rest = dfg.nodes - body
        if not rest:
            return None
        inner = [(a, b) for (a, b) in dfg.edges if a in rest and b in rest]
        redos = [frozenset(c) for c in _components(rest, inner)]
        demote = set()
        for block in redos:
            entries = set()
            exits = set()
            ok = True
            for (a, b) in dfg.edges:
                if a in body and b in block:
                    if a not in end_set:
                        ok = False
                        break
                    entries.add(b)
                if a in block and b in body:
                    if b not in start_set:
                        ok = False
                        break
                    exits.add(a)
            if ok:
                for b in entries:
                    if any((a, b) not in dfg.edges for a in end_set):
                        ok = False
                        break
            if ok:
                for a in exits:
                    if any((a, s) not in dfg.edges for s in start_set):
                        ok = False
                        break
            if not ok:
                demote |= block
        if not demote:
            return Cut(Op.LOOP, (frozenset(body),) + _sorted_blocks(redos))
        body |= demote


def find_cut(dfg: Dfg):
    """First applicable cut in the order xor, seq, par, loop; None otherwise."""
    if not dfg.nodes:
        raise EmptyGraphError("cannot cut an empty directly-follows graph")
    for finder in (_xor_cut, _seq_cut, _par_cut, _loop_cut):
        cut = finder(dfg)
        if cut is not None:
            return cut
    return None


def split_log_weighted(counts: Counter, cut: Cut) -> list[Counter]:
    """Split a trace multiset per the cut; grouping reads level-1 activities
    only while events keep their full paths."""
    index: dict[str, int] = {}
    for i, block in enumerate(cut.partition):
        for name in block:
            index[name] = i
    for trace in counts:
        for event in trace:
            if event[0] not in index:
                raise UncoveredActivityError(
                    f"activity {event[0]!r} is not covered by the cut partition"
                )
    n = len(cut.partition)
    sublogs: list[Counter] = [Counter() for _ in range(n)]
    if cut.op is Op.XOR:
        for trace, count in counts.items():
            if not trace:
                sublogs[0][trace] += count
                continue
            votes = Counter(index[e[0]] for e in trace)
            best = max(votes.values())
            block = min(i for i, v in votes.items() if v == best)
            kept = tuple(e for e in trace if index[e[0]] == block)
            sublogs[block][kept] += count
    elif cut.op is Op.SEQ:
        for trace, count in counts.items():
            segments: list[list] = [[] for _ in range(n)]
            cur = 0
            for event in trace:
                b = index[event[0]]
                if b >= cur:
                    cur = b
                    segments[b].append(event)
                # regressing events only arise under infrequency filtering
                # and are dropped like xor's foreign events
            for i in range(n):
                sublogs[i][tuple(segments[i])] += count
    elif cut.op is Op.PAR:
        for trace, count in counts.items():
            for i in range(n):
                sublogs[i][tuple(e for e in trace if index[e[0]] == i)] += count
    else:  # loop: slice at block transitions
        for trace, count in counts.items():
            if not trace:
                sublogs[0][trace] += count
                continue
            runs: list[tuple[int, list]] = []
            for event in trace:
                b = index[event[0]]
                if runs and runs[-1][0] == b:
                    runs[-1][1].append(event)
                else:
                    runs.append((b, [event]))
            if runs[0][0] != 0:
                runs.insert(0, (0, []))
            if runs[-1][0] != 0:
                runs.append((0, []))
            padded: list[tuple[int, list]] = []
            for b, events in runs:
                if padded and padded[-1][0] != 0 and b != 0:
                    padded.append((0, []))  # adjacent redo runs under filtering
                padded.append((b, events))
            for b, events in padded:
                sublogs[b][tuple(events)] += count
    return sublogs


def split_log(traces, cut: Cut) -> list[list[PathTrace]]:
    """List-of-traces wrapper around the weighted splitter, preserving input
    order within each block."""
    ordered = tuple(traces)
    weighted = split_log_weighted(Counter(ordered), cut)
    out: list[list[PathTrace]] = []
    for counter in weighted:
        remaining = Counter(counter)
        block: list[PathTrace] = []
        for trace in sorted(remaining):
            block.extend([trace] * remaining[trace])
        out.append(block)
    return out
