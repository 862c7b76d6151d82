import pytest

from stackmine import (
    HeuristicConfig,
    HierLog,
    apply_heuristic,
    attribute_combination,
    log_stats,
    nested_calls,
    parse_xes,
    structured_names,
)
from stackmine.errors import (
    EmptySegmentError,
    MissingAttributeError,
    MissingLifecycleError,
    UnbalancedLifecycleError,
)
from stackmine.logs import Event, HierTrace

from conftest import TABLE_TRACE


def lifecycle_log(*events):
    """events: (name, 'start'|'complete') pairs forming one trace."""
    trace = HierTrace(
        tuple(Event.of(name, **{"lifecycle:transition": kind}) for name, kind in events)
    )
    return HierLog.of(trace)


def test_nested_calls_reconstructs_table_trace(listing1_xes):
    log = nested_calls(parse_xes(listing1_xes))
    assert log.path_view() == (tuple(TABLE_TRACE),)
    assert log_stats(log).depth == 4
    assert log_stats(log).events == 5


def test_nested_calls_keeps_interval_timestamps(listing1_xes):
    log = nested_calls(parse_xes(listing1_xes))
    first = log.traces[0].events[0]  # Main.input(), the earliest leaf interval
    assert first.attr("time:start") == "2024-01-01T10:00:01.000+00:00"
    assert first.attr("time:complete") == "2024-01-01T10:00:02.000+00:00"


def test_nested_calls_single_pair():
    out = nested_calls(lifecycle_log(("a", "start"), ("a", "complete")))
    assert out.path_view() == ((("a",),),)


def test_nested_calls_two_siblings_under_root():
    out = nested_calls(
        lifecycle_log(
            ("a", "start"),
            ("b", "start"),
            ("b", "complete"),
            ("c", "start"),
            ("c", "complete"),
            ("a", "complete"),
        )
    )
    assert out.path_view() == ((("a", "b"), ("a", "c")),)


def test_nested_calls_top_level_forest():
    out = nested_calls(
        lifecycle_log(("a", "start"), ("a", "complete"), ("b", "start"), ("b", "complete"))
    )
    assert out.path_view() == ((("a",), ("b",)),)


def test_nested_calls_overlap_rejected():
    with pytest.raises(UnbalancedLifecycleError) as err:
        nested_calls(
            lifecycle_log(
                ("a", "start"), ("b", "start"), ("a", "complete"), ("b", "complete")
            )
        )
    assert err.value.trace_index == 0
    assert err.value.position == 2


def test_nested_calls_unclosed_start_rejected():
    with pytest.raises(UnbalancedLifecycleError):
        nested_calls(lifecycle_log(("a", "start")))


def test_nested_calls_complete_without_start_rejected():
    with pytest.raises(UnbalancedLifecycleError):
        nested_calls(lifecycle_log(("a", "complete")))


def test_nested_calls_missing_lifecycle_rejected():
    log = HierLog.of(HierTrace((Event.of("a"),)))
    with pytest.raises(MissingLifecycleError):
        nested_calls(log)


def test_nested_calls_flat_when_never_nested():
    out = nested_calls(
        lifecycle_log(("a", "start"), ("a", "complete"), ("b", "start"), ("b", "complete"))
    )
    assert log_stats(out).depth == 1
    # start/complete pairs fused: event count halves for nesting-free logs
    assert log_stats(out).events == 2


def test_nested_calls_round_trips_containment(listing1_xes):
    """Regenerating start/complete events from the hierarchical trace gives
    back the original interval forest."""
    flat = parse_xes(listing1_xes)
    hier = nested_calls(flat)

    def replay(trace):
        events = []
        stack = []
        for event in trace.events:
            path = event.path
            common = 0
            while common < min(len(stack), len(path) - 1) and stack[common] == path[common]:
                common += 1
            while len(stack) > common:
                events.append((stack.pop(), "complete"))
            for name in path[common:-1]:
                stack.append(name)
                events.append((name, "start"))
            events.append((path[-1], "start"))
            events.append((path[-1], "complete"))
        while stack:
            events.append((stack.pop(), "complete"))
        return events

    regenerated = replay(hier.traces[0])
    original = [
        (e.head, e.attr("lifecycle:transition")) for e in flat.traces[0].events
    ]
    assert regenerated == original


def test_structured_names_split():
    log = HierLog.from_paths([[("p.C.m()",)]])
    out = structured_names(log, ".")
    assert out.path_view() == ((("p", "C", "m()"),),)


def test_structured_names_identity_without_separator():
    log = HierLog.from_paths([[("plain",)]])
    assert structured_names(log, ".") == log


def test_structured_names_shared_prefix():
    log = HierLog.from_paths([[("a.b",), ("a.c",)]])
    out = structured_names(log, ".")
    assert out.path_view() == ((("a", "b"), ("a", "c")),)


def test_structured_names_empty_segment_rejected():
    with pytest.raises(EmptySegmentError):
        structured_names(HierLog.from_paths([[("a..b",)]]), ".")
    with pytest.raises(EmptySegmentError):
        structured_names(HierLog.from_paths([[(".a",)]]), ".")


def test_attribute_combination():
    log = HierLog.of(
        HierTrace((Event.of("GET", protocol="HTTP"),))
    )
    out = attribute_combination(log, ["protocol"])
    assert out.path_view() == ((("HTTP", "GET"),),)


def test_attribute_combination_empty_keys_is_identity():
    log = HierLog.from_paths([[("a",)]])
    assert attribute_combination(log, []) == log


def test_attribute_combination_two_keys_depth():
    log = HierLog.of(
        HierTrace(
            (
                Event.of("send", component="net", iface="tcp"),
                Event.of("recv", component="net", iface="udp"),
            )
        )
    )
    out = attribute_combination(log, ["component", "iface"])
    assert log_stats(out).depth == 3
    assert out.path_view() == ((("net", "tcp", "send"), ("net", "udp", "recv")),)


def test_attribute_combination_missing_key():
    log = HierLog.of(HierTrace((Event.of("send", component="net"),)))
    with pytest.raises(MissingAttributeError) as err:
        attribute_combination(log, ["component", "iface"])
    assert err.value.key == "iface"
    assert err.value.event_index == 0


def test_heuristics_preserve_trace_and_event_counts():
    log = HierLog.from_paths([[("a.b",), ("c.d",)], [("e",)]])
    for config in (
        HeuristicConfig(kind="structured_names"),
        HeuristicConfig(kind="none"),
    ):
        out = apply_heuristic(log, config)
        assert len(out.traces) == len(log.traces)
        assert log_stats(out).events == log_stats(log).events


def test_config_validation():
    with pytest.raises(ValueError):
        HeuristicConfig(kind="nope")
    with pytest.raises(ValueError):
        HeuristicConfig(kind="structured_names", separator="")
    with pytest.raises(ValueError):
        HeuristicConfig(kind="attribute_combination", attr_keys=())
    roundtrip = HeuristicConfig.from_dict(
        {"kind": "attribute_combination", "attr_keys": ["k"]}
    )
    assert roundtrip.attr_keys == ("k",)
