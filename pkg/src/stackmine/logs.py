"""Flat and hierarchical event logs.

An event carries a path of activities, one per hierarchy level; a flat log is
simply a depth-1 hierarchical log.  Logs are immutable after construction and
compare as multisets of traces.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

SILENT_LABEL = "τ"  # reserved; never a real activity name

#: One event as a plain tuple of activity names, outermost level first.
PathEvent = tuple[str, ...]
#: One trace as a tuple of path events.
PathTrace = tuple[PathEvent, ...]


def _freeze_attrs(attrs: Mapping[str, str] | None) -> tuple[tuple[str, str], ...]:
    if not attrs:
        return ()
    return tuple(sorted((str(k), str(v)) for k, v in attrs.items()))


@dataclass(frozen=True)
class Event:
    """A single event: a non-empty activity path plus optional attributes."""

    path: PathEvent
    attrs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if len(self.path) < 1:
            raise ValueError("event path must have length >= 1")
        for name in self.path:
            if not name or name == SILENT_LABEL:
                raise ValueError(f"invalid activity name: {name!r}")

    @staticmethod
    def of(*path: str, **attrs: str) -> "Event":
        return Event(tuple(path), _freeze_attrs(attrs))

    @property
    def head(self) -> str:
        return self.path[0]

    @property
    def depth(self) -> int:
        return len(self.path)

    def attr(self, key: str) -> str | None:
        for k, v in self.attrs:
            if k == key:
                return v
        return None

    @property
    def attr_dict(self) -> dict[str, str]:
        return dict(self.attrs)


@dataclass(frozen=True)
class HierTrace:
    """A sequence of events; the empty trace is legal."""

    events: tuple[Event, ...] = ()

    @staticmethod
    def of(*events: Event) -> "HierTrace":
        return HierTrace(tuple(events))

    @staticmethod
    def from_paths(paths: Iterable[Iterable[str]]) -> "HierTrace":
        return HierTrace(tuple(Event(tuple(p)) for p in paths))

    def path_view(self) -> PathTrace:
        return tuple(e.path for e in self.events)

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class HierLog:
    """A multiset of traces; input order is preserved for determinism."""

    traces: tuple[HierTrace, ...] = ()

    @staticmethod
    def of(*traces: HierTrace) -> "HierLog":
        return HierLog(tuple(traces))

    @staticmethod
    def from_paths(traces: Iterable[Iterable[Iterable[str]]]) -> "HierLog":
        return HierLog(tuple(HierTrace.from_paths(t) for t in traces))

    def path_view(self) -> tuple[PathTrace, ...]:
        return tuple(t.path_view() for t in self.traces)

    def as_multiset(self) -> Counter:
        return Counter(self.traces)

    def paths_multiset(self) -> Counter:
        return Counter(self.path_view())

    def __len__(self) -> int:
        return len(self.traces)


def same_log(a: HierLog, b: HierLog) -> bool:
    """Multiset equality over traces, ignoring trace order."""
    return a.as_multiset() == b.as_multiset()


def same_paths(a: HierLog, b: HierLog) -> bool:
    """Multiset equality over event paths only, ignoring attributes."""
    return a.paths_multiset() == b.paths_multiset()


def hier_concat(name: str, log: HierLog) -> HierLog:
    """Prefix `name` onto every event path.

    An empty trace turns into the single bare event `(name,)`: wrapping a run
    that produced nothing observable still records that the wrapper itself
    ran.  This keeps `project(hier_concat(f, L), 1) == L` an exact inverse and
    raises the depth of every non-empty log by one.
    """
    traces = []
    for trace in log.traces:
        if not trace.events:
            traces.append(HierTrace((Event((name,)),)))
        else:
            traces.append(
                HierTrace(tuple(Event((name,) + e.path, e.attrs) for e in trace.events))
            )
    return HierLog(tuple(traces))


def project(log: HierLog, i: int) -> HierLog:
    """Drop the first `i` activities of every event path.

    Events whose path length is <= i disappear from their trace; traces are
    retained even when they become empty.
    """
    if i <= 0:
        return log
    traces = []
    for trace in log.traces:
        kept = tuple(Event(e.path[i:], e.attrs) for e in trace.events if len(e.path) > i)
        traces.append(HierTrace(kept))
    return HierLog(tuple(traces))


def log_depth(log: HierLog) -> int:
    return max((e.depth for t in log.traces for e in t.events), default=0)


def log_alphabet(log: HierLog) -> frozenset[str]:
    return frozenset(a for t in log.traces for e in t.events for a in e.path)


@dataclass(frozen=True)
class LogStats:
    traces: int
    events: int
    depth: int
    alphabet: frozenset[str] = field(default_factory=frozenset)
    avg_trace_len: float = 0.0

    def to_dict(self) -> dict:
        return {
            "traces": self.traces,
            "events": self.events,
            "depth": self.depth,
            "alphabet": sorted(self.alphabet),
            "avg_trace_len": self.avg_trace_len,
        }


def log_stats(log: HierLog) -> LogStats:
    n_traces = len(log.traces)
    n_events = sum(len(t.events) for t in log.traces)
    return LogStats(
        traces=n_traces,
        events=n_events,
        depth=log_depth(log),
        alphabet=log_alphabet(log),
        avg_trace_len=(n_events / n_traces) if n_traces else 0.0,
    )
