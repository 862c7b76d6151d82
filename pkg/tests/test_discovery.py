"""The discovery engine against the worked examples and its guarantees."""

import random
from collections import Counter

import pytest

from stackmine import (
    TAU,
    DiscoveryConfig,
    HierLog,
    act,
    discover_base_case,
    fitness,
    flat_discover,
    loop,
    naive_discover,
    rad_discover,
    rad_discover_details,
    random_hier_log,
    rec,
    seq,
    sub,
    tree_equal,
    xor,
)
from stackmine.discovery import complexity_budget, rad_discover_details as details
from conftest import APROC, BPROC, INPUT, MAIN, OUTPUT, STEP_POST, STEP_PRE


def log_of(*traces):
    return HierLog.from_paths(traces)


def test_base_cases():
    assert discover_base_case([()]) == TAU
    assert discover_base_case([(("a",),), (("a",),)]) == act("a")
    assert tree_equal(discover_base_case([(("a",),), ()]), xor(act("a"), TAU))
    assert discover_base_case([(("a",), ("b",))]) is None


def test_base_case_minority_empty_drop():
    traces = [(("a",),)] * 9 + [()]
    assert discover_base_case(traces, paths=0.8) == act("a")
    assert tree_equal(discover_base_case(traces, paths=1.0), xor(act("a"), TAU))


def test_naive_example_choice_of_sequences():
    tree = naive_discover(log_of([("f", "a"), ("f", "b")], [("f", "c")]))
    assert tree_equal(tree, sub("f", xor(seq(act("a"), act("b")), act("c"))))


def test_naive_example_nested_names():
    tree = naive_discover(log_of([("f", "a"), ("f", "g", "f", "b")]))
    assert tree_equal(tree, sub("f", seq(act("a"), sub("g", sub("f", act("b"))))))


def test_naive_example_optional_content():
    tree = naive_discover(log_of([("f", "a")], [("f",)]))
    assert tree_equal(tree, sub("f", xor(act("a"), TAU)))


def test_naive_on_table_trace(table_log):
    tree = naive_discover(table_log)
    expected = sub(
        MAIN,
        seq(
            act(INPUT),
            sub(BPROC, seq(act(STEP_PRE), sub(BPROC, act(APROC)), act(STEP_POST))),
            act(OUTPUT),
        ),
    )
    assert tree_equal(tree, expected)


def test_rad_example_one_sided_recursion():
    result = details(log_of([("f", "a"), ("f", "g", "f", "b")]))
    expected = sub("f", xor(act("b"), seq(act("a"), sub("g", rec("f")))))
    assert tree_equal(result.tree, expected)
    assert result.sublog("f") == Counter(
        {(("b",),): 1, (("a",), ("g", "f", "b")): 1}
    )
    assert result.sublog("f", "g") == Counter({(("f", "b"),): 1})


def test_rad_example_mutual_recursion():
    result = details(log_of([("f", "g", "g", "a")], [("f", "g", "f", "g", "a")]))
    expected = sub("f", sub("g", xor(act("a"), rec("f"), rec("g"))))
    assert tree_equal(result.tree, expected)
    assert result.sublog("f") == Counter(
        {(("g", "g", "a"),): 1, (("g", "f", "g", "a"),): 1, (("g", "a"),): 1}
    )
    assert result.sublog("f", "g") == Counter(
        {(("g", "a"),): 1, (("f", "g", "a"),): 1, (("a",),): 1}
    )


def test_rad_example_self_call():
    result = details(log_of([("f", "f")]))
    assert tree_equal(result.tree, sub("f", xor(rec("f"), TAU)))
    assert result.sublog("f") == Counter({(("f",),): 1, (): 1})


def test_rad_on_table_trace_gives_running_example_model(table_log, recursive_model):
    assert tree_equal(rad_discover(table_log), recursive_model)


def test_flat_examples():
    assert tree_equal(
        flat_discover(log_of([("a",), ("b",)], [("a",), ("c",)])),
        seq(act("a"), xor(act("b"), act("c"))),
    )
    assert tree_equal(
        flat_discover(log_of([("a",), ("b",)], [("b",), ("a",)])),
        # both-way evidence yields the parallel operator
        __import__("stackmine").par(act("a"), act("b")),
    )
    assert flat_discover(log_of([])) == TAU


def test_flat_collapses_event_paths():
    tree = flat_discover(log_of([("f", "a")], [("f", "b")]))
    assert tree_equal(tree, xor(act("f.a"), act("f.b")))


def test_flower_fallthrough_keeps_fitness():
    # a 3-cycle with every activity both starting and ending admits no cut
    log = log_of([("a",), ("b",)], [("b",), ("c",)], [("c",), ("a",)])
    tree = naive_discover(log)
    assert tree_equal(tree, loop(xor(act("a"), act("b"), act("c"), TAU), TAU))
    assert fitness(tree, log).trace_fitness == 1.0


def test_flower_hangs_deep_content_under_named_subtrees():
    log = log_of([("f", "x"), ("f", "y"), ("f", "x")])
    tree = rad_discover(log)
    assert fitness(tree, log).trace_fitness == 1.0


def test_modes_agree_on_depth1_logs():
    for seed in range(10):
        rng = random.Random(seed)
        traces = [
            [(rng.choice("abc"),) for _ in range(rng.randint(0, 4))] for _ in range(6)
        ]
        log = HierLog.from_paths(traces)
        n, r, f = naive_discover(log), rad_discover(log), flat_discover(log)
        assert tree_equal(n, r) and tree_equal(r, f)


def test_discovery_deterministic():
    log = random_hier_log(7, size=6, n_traces=10)
    assert rad_discover(log) == rad_discover(log)
    assert naive_discover(log) == naive_discover(log)


def test_rad_schedule_independence():
    log = log_of([("f", "g", "g", "a")], [("f", "g", "f", "g", "a")], [("h", "x")])
    baseline = rad_discover(log)
    for seed in range(8):
        rng = random.Random(seed)

        def shuffled(paths, rng=rng):
            paths = list(paths)
            rng.shuffle(paths)
            return paths

        assert rad_discover_details(log, _order=shuffled).tree == baseline


def test_rad_monotone_sublogs_and_change_bounds(table_log):
    result = details(table_log)
    depth, sigma = complexity_budget(table_log)
    for path, changes in result.stats.sublog_changes.items():
        assert changes <= depth, (path, changes, depth)
    assert result.stats.max_stack_depth <= depth + sigma


def test_context_paths_never_repeat_names():
    logs = [
        log_of([("f", "g", "f", "g", "a")]),
        log_of([("f", "f", "f")]),
        random_hier_log(3, size=5, n_traces=8),
    ]
    for log in logs:
        result = details(log)
        for path in result.stats.sublog_changes:
            assert len(set(path)) == len(path), path


def test_infrequency_filter_prunes_rare_branch():
    traces = [[("a",), ("b",)]] * 98 + [[("a",), ("c",)], [("a",), ("c",)]]
    log = HierLog.from_paths(traces)
    strict = naive_discover(log, DiscoveryConfig(paths=1.0, mode="naive"))
    loose = naive_discover(log, DiscoveryConfig(paths=0.8, mode="naive"))
    assert tree_equal(strict, seq(act("a"), xor(act("b"), act("c"))))
    assert tree_equal(loose, seq(act("a"), act("b")))


def test_config_validation():
    with pytest.raises(ValueError):
        DiscoveryConfig(paths=1.5)
    with pytest.raises(ValueError):
        DiscoveryConfig(mode="magic")


def test_store_json_dump():
    result = details(log_of([("f", "f")]))
    dump = result.store.to_json()
    assert '"path"' in dump and '"traces"' in dump


def test_bare_event_beside_deeper_same_name_stays_fit():
    # a leaf call followed by a recursing call of one name: stripping the
    # name is not invertible, so discovery must not wrap the whole trace
    log = log_of([("a",), ("a", "a")], [("f",), ("f", "g"), ("f",)])
    for mode in (naive_discover, rad_discover):
        tree = mode(log)
        assert fitness(tree, log).trace_fitness == 1.0, mode
