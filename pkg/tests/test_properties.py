"""Property suites over randomly shaped trees and logs."""

from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from stackmine import (
    TAU,
    HierLog,
    LangBound,
    accepts,
    canonical,
    fitness,
    format_tree,
    language,
    naive_discover,
    parse_tree,
    rad_discover,
    reduce_tree,
    tree_equal,
)
from stackmine.ptree import NamedSubtree, Op, Operator, RecursionLeaf

B = LangBound(5, 2)

_names = st.sampled_from(["a", "b", "c", "f", "g"])
_leaves = st.one_of(
    st.just(TAU),
    _names.map(lambda n: __import__("stackmine").act(n)),
)


def _ops(children):
    def build(args):
        op, kids = args
        if op is Op.LOOP and len(kids) < 2:
            kids = kids + (TAU,)
        return Operator(op, kids)

    return st.tuples(
        st.sampled_from(list(Op)), st.lists(children, min_size=1, max_size=3).map(tuple)
    ).map(build)


def _subs(children):
    return st.tuples(_names, children).map(lambda t: NamedSubtree(*t))


TREES = st.recursive(_leaves, lambda kids: st.one_of(_ops(kids), _subs(kids)), max_leaves=6)


def _bind_free_recursion(tree):
    """Wrap trees so hypothesis can also explore recursion leaves safely."""
    return tree


RECURSIVE_TREES = st.tuples(_names, TREES).map(
    lambda t: NamedSubtree(t[0], Operator(Op.XOR, (t[1], RecursionLeaf(t[0]))))
)

ANY_TREE = st.one_of(TREES, RECURSIVE_TREES)


@settings(max_examples=60, deadline=None)
@given(ANY_TREE)
def test_reduce_preserves_bounded_language(tree):
    reduced = reduce_tree(tree)
    assert language(tree, B) == language(reduced, B)
    assert reduce_tree(reduced) == reduced


@settings(max_examples=60, deadline=None)
@given(ANY_TREE)
def test_canonical_ordering_preserves_language(tree):
    assert language(tree, B) == language(canonical(tree), B)


@settings(max_examples=50, deadline=None)
@given(ANY_TREE)
def test_enumeration_agrees_with_membership(tree):
    lang = language(tree, B)
    for trace in lang:
        assert accepts(tree, trace)
    assert (() in lang) == accepts(tree, ())


@settings(max_examples=40, deadline=None)
@given(ANY_TREE)
def test_notation_round_trip(tree):
    assert parse_tree(format_tree(tree)) == canonical(tree)


_paths = st.lists(_names, min_size=1, max_size=3).map(tuple)
_logs = st.lists(st.lists(_paths, min_size=0, max_size=4), min_size=1, max_size=6).map(
    HierLog.from_paths
)


@settings(max_examples=60, deadline=None)
@given(_logs)
def test_discovery_fits_arbitrary_logs(log):
    assert fitness(naive_discover(log), log).trace_fitness == 1.0
    assert fitness(rad_discover(log), log).trace_fitness == 1.0


@settings(max_examples=40, deadline=None)
@given(_logs)
def test_rad_sublogs_grow_monotonically(log):
    from stackmine.discovery import DiscoveryConfig, SublogStore, _Engine, _as_counts

    store = SublogStore()
    store.init_root(_as_counts(log))
    engine = _Engine(DiscoveryConfig(), store)
    snapshots: dict = {}
    while True:
        dirty = store.dirty_paths()
        if not dirty:
            break
        dirty.sort(key=lambda p: (len(p), p))
        for path in dirty:
            entry = store.entries[path]
            entry.dirty = False
            entry.model = engine.discover(store.log(path), path)
            for known, seen in snapshots.items():
                current = Counter(store.entries[known].traces)
                assert all(current[t] >= c for t, c in seen.items()), known
            snapshots[path] = Counter(entry.traces)
