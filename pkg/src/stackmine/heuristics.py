"""Heuristics that lift a flat log into a hierarchical one.

Three strategies: nested calls (start/complete interval containment, i.e.
call-stack reconstruction), structured names (splitting dotted identifiers),
and attribute combination (stacking attribute values above the activity).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    EmptySegmentError,
    MissingAttributeError,
    MissingLifecycleError,
    UnbalancedLifecycleError,
)
from .logs import Event, HierLog, HierTrace
from .xes import LIFECYCLE, TIMESTAMP


@dataclass(frozen=True)
class HeuristicConfig:
    kind: str = "none"  # none | nested_calls | structured_names | attribute_combination
    separator: str = "."
    attr_keys: tuple[str, ...] = ()

    def __post_init__(self):
        kinds = ("none", "nested_calls", "structured_names", "attribute_combination")
        if self.kind not in kinds:
            raise ValueError(f"unknown heuristic kind: {self.kind!r}")
        if self.kind == "structured_names" and not self.separator:
            raise ValueError("structured_names requires a non-empty separator")
        if self.kind == "attribute_combination" and not self.attr_keys:
            raise ValueError("attribute_combination requires at least one attribute key")

    @staticmethod
    def from_dict(data: dict) -> "HeuristicConfig":
        return HeuristicConfig(
            kind=data.get("kind", "none"),
            separator=data.get("separator", "."),
            attr_keys=tuple(data.get("attr_keys", ())),
        )

    def to_dict(self) -> dict:
        return {"kind": self.kind, "separator": self.separator, "attr_keys": list(self.attr_keys)}


@dataclass
class _Interval:
    name: str
    start_pos: int
    start_ts: str | None
    end_ts: str | None = None
    children: list = field(default_factory=list)


def _trace_intervals(trace: HierTrace, trace_index: int) -> list[_Interval]:
    """Pair start/complete events into an interval forest via stack discipline."""
    roots: list[_Interval] = []
    stack: list[_Interval] = []
    for pos, event in enumerate(trace.events):
        name = event.head
        lifecycle = event.attr(LIFECYCLE)
        if lifecycle is None:
            raise MissingLifecycleError(
                f"trace {trace_index}, event {pos}: missing {LIFECYCLE}"
            )
        if lifecycle == "start":
            interval = _Interval(name, pos, event.attr(TIMESTAMP))
            if stack:
                stack[-1].children.append(interval)
            else:
                roots.append(interval)
            stack.append(interval)
        elif lifecycle == "complete":
            if not stack:
                raise UnbalancedLifecycleError(
                    f"trace {trace_index}, event {pos}: complete of {name!r} without open start",
                    trace_index=trace_index,
                    position=pos,
                )
            if stack[-1].name != name:
                raise UnbalancedLifecycleError(
                    f"trace {trace_index}, event {pos}: complete of {name!r} "
                    f"while {stack[-1].name!r} is open (overlapping intervals)",
                    trace_index=trace_index,
                    position=pos,
                )
            stack[-1].end_ts = event.attr(TIMESTAMP)
            stack.pop()
        else:
            raise MissingLifecycleError(
                f"trace {trace_index}, event {pos}: unsupported {LIFECYCLE}={lifecycle!r}"
            )
    if stack:
        raise UnbalancedLifecycleError(
            f"trace {trace_index}: {stack[-1].name!r} started at "
            f"event {stack[-1].start_pos} never completes",
            trace_index=trace_index,
            position=stack[-1].start_pos,
        )
    return roots


def _leaf_events(interval: _Interval, prefix: tuple[str, ...], out: list[Event]) -> None:
    path = prefix + (interval.name,)
    if not interval.children:
        attrs = {}
        if interval.start_ts is not None:
            attrs["time:start"] = interval.start_ts
        if interval.end_ts is not None:
            attrs["time:complete"] = interval.end_ts
        out.append(Event.of(*path, **attrs))
        return
    for child in interval.children:
        _leaf_events(child, path, out)


def nested_calls(log: HierLog) -> HierLog:
    """Rebuild call hierarchy from start/complete interval containment.

    Each leaf interval (an execution that contains no other) becomes one
    event whose path runs from its outermost ancestor down to itself; callers
    appear only as prefixes of their callees, the same way a named submodel
    prefixes its content.  Events are ordered by interval start position.
    """
    traces = []
    for ti, trace in enumerate(log.traces):
        events: list[Event] = []
        for root in _trace_intervals(trace, ti):
            _leaf_events(root, (), events)
        traces.append(HierTrace(tuple(events)))
    return HierLog(tuple(traces))


def structured_names(log: HierLog, separator: str = ".") -> HierLog:
    """Split each activity name on `separator` into a hierarchy path."""
    if not separator:
        raise ValueError("separator must be non-empty")
    traces = []
    for trace in log.traces:
        events = []
        for event in trace.events:
            name = event.head
            segments = tuple(name.split(separator)) if separator in name else (name,)
            if any(not s for s in segments):
                raise EmptySegmentError(
                    f"activity {name!r} has an empty segment when split on {separator!r}"
                )
            events.append(Event(segments, event.attrs))
        traces.append(HierTrace(tuple(events)))
    return HierLog(tuple(traces))


def attribute_combination(log: HierLog, attr_keys) -> HierLog:
    """Prefix the values of `attr_keys`, in order, above each activity."""
    keys = tuple(attr_keys)
    if not keys:
        return log
    traces = []
    event_index = 0
    for trace in log.traces:
        events = []
        for event in trace.events:
            prefix = []
            for key in keys:
                value = event.attr(key)
                if value is None:
                    raise MissingAttributeError(
                        f"event {event_index} lacks attribute {key!r}",
                        event_index=event_index,
                        key=key,
                    )
                prefix.append(value)
            events.append(Event(tuple(prefix) + event.path, event.attrs))
            event_index += 1
        traces.append(HierTrace(tuple(events)))
    return HierLog(tuple(traces))


def apply_heuristic(log: HierLog, config: HeuristicConfig) -> HierLog:
    if config.kind == "none":
        return log
    if config.kind == "nested_calls":
        return nested_calls(log)
    if config.kind == "structured_names":
        return structured_names(log, config.separator)
    return attribute_combination(log, config.attr_keys)
