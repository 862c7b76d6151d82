from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stackmine import Event, HierLog, HierTrace, hier_concat, log_stats, project, same_paths

NAMES = st.text(alphabet="abcfg", min_size=1, max_size=3)
PATHS = st.lists(NAMES, min_size=1, max_size=4).map(tuple)
TRACES = st.lists(PATHS, min_size=0, max_size=5)
LOGS = st.lists(TRACES, min_size=0, max_size=5).map(HierLog.from_paths)


def test_event_rejects_empty_path():
    with pytest.raises(ValueError):
        Event(())


def test_event_rejects_silent_label():
    with pytest.raises(ValueError):
        Event(("τ",))


def test_hier_concat_prefixes_every_event():
    log = HierLog.from_paths([[("g", "a"), ("g", "b"), ("c",)]])
    out = hier_concat("f", log)
    assert out.path_view() == ((("f", "g", "a"), ("f", "g", "b"), ("f", "c")),)


def test_hier_concat_empty_log():
    assert hier_concat("f", HierLog()) == HierLog()


def test_hier_concat_empty_trace_materializes_wrapper_event():
    out = hier_concat("f", HierLog.of(HierTrace()))
    assert out.path_view() == ((("f",),),)
    assert log_stats(out).depth == 1


def test_project_examples():
    log = HierLog.from_paths([[("g", "a"), ("g", "b"), ("c",)]])
    assert project(log, 0) == log
    assert project(log, 1).path_view() == ((("a",), ("b",)),)
    assert project(log, 2).path_view() == ((),)  # the empty trace remains


def test_project_inverts_concat():
    log = HierLog.from_paths([[("g", "a"), ("c",)], []])
    assert project(hier_concat("f", log), 1) == log


def test_log_stats_example():
    log = HierLog.from_paths([[("g", "a"), ("g", "b"), ("c",)]])
    stats = log_stats(log)
    assert (stats.traces, stats.events, stats.depth) == (1, 3, 2)
    assert stats.alphabet == frozenset({"g", "a", "b", "c"})
    assert stats.avg_trace_len == 3.0


def test_log_stats_empty():
    stats = log_stats(HierLog())
    assert (stats.traces, stats.events, stats.depth) == (0, 0, 0)
    assert stats.alphabet == frozenset()
    assert stats.avg_trace_len == 0.0


def test_log_stats_table_trace(table_log):
    stats = log_stats(table_log)
    assert stats.depth == 4
    assert len(stats.alphabet) == 7


@given(LOGS, st.integers(0, 3), st.integers(0, 3))
def test_projection_composes(log, i, j):
    assert project(project(log, i), j) == project(log, i + j)


@given(LOGS, NAMES)
def test_concat_then_project_is_identity(log, name):
    assert project(hier_concat(name, log), 1) == log


@given(LOGS, st.integers(0, 3))
def test_projection_depth_bound(log, i):
    depth = log_stats(log).depth
    assert log_stats(project(log, i)).depth <= max(0, depth - i)


def test_multiset_equality_ignores_order():
    a = HierLog.from_paths([[("a",)], [("b",)]])
    b = HierLog.from_paths([[("b",)], [("a",)]])
    assert same_paths(a, b)
    assert a.paths_multiset() == Counter({((("a",),)): 1, ((("b",),)): 1})
