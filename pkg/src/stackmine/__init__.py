"""Hierarchy- and recursion-aware process discovery from software event logs."""

from .conformance import (
    FitnessReport,
    PrecisionReport,
    exact_trace_model,
    fitness,
    flower_model,
    is_df_complete,
    precision_estimate,
)
from .dfg import Cut, Dfg, build_dfg, filter_infrequent, find_cut, split_log
from .discovery import (
    DiscoveryConfig,
    DiscoveryResult,
    SublogStore,
    discover,
    discover_base_case,
    flat_discover,
    flat_discover_details,
    flatten_log,
    naive_discover,
    naive_discover_details,
    rad_discover,
    rad_discover_details,
)
from .export import from_json, to_dot, to_json
from .generators import gen_complete_log, gen_model, random_hier_log, sample_log
from .heuristics import (
    HeuristicConfig,
    apply_heuristic,
    attribute_combination,
    nested_calls,
    structured_names,
)
from .logs import (
    Event,
    HierLog,
    HierTrace,
    LogStats,
    hier_concat,
    log_stats,
    project,
    same_log,
    same_paths,
)
from .petri import PetriNet, firing_sequences, to_pnml, tree_to_net
from .ptree import (
    TAU,
    ActivityLeaf,
    HPTree,
    NamedSubtree,
    Op,
    Operator,
    RecursionLeaf,
    SilentLeaf,
    act,
    canonical,
    format_tree,
    loop,
    par,
    parse_tree,
    rec,
    seq,
    sub,
    tree_equal,
    tree_size,
    validate,
    xor,
)
from .rewrite import depth_filter, reduce_tree
from .semantics import LangBound, accepts, language
from .xes import parse_csv, parse_csv_file, parse_xes, parse_xes_file, write_xes

__version__ = "0.1.0"
