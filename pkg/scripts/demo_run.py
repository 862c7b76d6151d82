#!/usr/bin/env python3
"""End-to-end tour on the bundled method-call run: parse, lift, discover,
filter, and export."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from conftest import run_xes

from stackmine import (
    LangBound,
    depth_filter,
    fitness,
    flat_discover,
    flatten_log,
    format_tree,
    log_stats,
    naive_discover,
    nested_calls,
    parse_xes,
    precision_estimate,
    rad_discover,
    to_dot,
    to_pnml,
)


def main() -> None:
    flat = parse_xes(run_xes())
    print("flat log:", log_stats(flat).to_dict())
    log = nested_calls(flat)
    print("hierarchical log:", log_stats(log).to_dict())

    for name, discover in [("naive", naive_discover), ("rad", rad_discover)]:
        model = discover(log)
        fit = fitness(model, log).trace_fitness
        print(f"\n{name} model (fitness {fit:.2f}):\n  {format_tree(model)}")

    model = rad_discover(log)
    bound = LangBound(8, 2)
    print("\nprecision (recursion-aware):", round(precision_estimate(model, log, bound).precision, 3))
    flat_view = flatten_log(log)
    print("flat baseline:", format_tree(flat_discover(log)))

    shallow = depth_filter(model, 0, 1)
    print("\ndepth-filtered to the top level:", format_tree(shallow))
    Path("model.dot").write_bytes(to_dot(model))
    Path("model.pnml").write_bytes(to_pnml(shallow))
    print("wrote model.dot and model.pnml")


if __name__ == "__main__":
    main()
