"""Command-line entry point: discover, bench, and serve."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .discovery import DiscoveryConfig, discover
from .errors import RecursionNotRepresentableError, StackmineError
from .export import to_dot, to_json
from .heuristics import HeuristicConfig, apply_heuristic
from .logs import HierLog, log_stats
from .petri import to_pnml
from .ptree import format_tree, tree_size
from .rewrite import depth_filter
from .xes import parse_csv_file, parse_xes_file

FORMATS = ("tree", "dot", "pnml", "json")


@dataclass(frozen=True)
class RunConfig:
    input_path: str
    heuristic: HeuristicConfig = field(default_factory=HeuristicConfig)
    discovery: DiscoveryConfig = field(default_factory=DiscoveryConfig)
    min_depth: int = 0
    max_depth: int | None = None
    export_format: str = "tree"
    output_path: str | None = None

    def __post_init__(self):
        if self.export_format not in FORMATS:
            raise ValueError(f"unknown format: {self.export_format!r}")
        if self.max_depth is not None and self.min_depth > self.max_depth:
            raise ValueError("min_depth must not exceed max_depth")


def load_log(path: str) -> HierLog:
    if path.endswith(".csv"):
        return parse_csv_file(path)
    return parse_xes_file(path)


def _heuristic_from_args(args) -> HeuristicConfig:
    kind = args.heuristic.replace("-", "_")
    keys = tuple(k for k in (args.attr_keys or "").split(",") if k)
    return HeuristicConfig(kind=kind, separator=args.separator, attr_keys=keys)


def cmd_discover(config: RunConfig) -> int:
    try:
        log = load_log(config.input_path)
        log = apply_heuristic(log, config.heuristic)
    except (StackmineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    tree = discover(log, config.discovery)
    tree = depth_filter(tree, config.min_depth, config.max_depth)
    stats = log_stats(log)
    print(
        f"log: {stats.traces} traces, {stats.events} events, depth {stats.depth}, "
        f"{len(stats.alphabet)} activities; model: {tree_size(tree)} nodes",
        file=sys.stderr,
    )
    try:
        if config.export_format == "tree":
            payload = (format_tree(tree) + "\n").encode("utf-8")
        elif config.export_format == "dot":
            payload = to_dot(tree)
        elif config.export_format == "pnml":
            payload = to_pnml(tree)
        else:
            payload = to_json(tree) + b"\n"
    except RecursionNotRepresentableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if config.output_path:
        Path(config.output_path).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


def cmd_bench(suite: str, repetitions: int, out_path: str | None) -> int:
    from .bench import rows_to_csv, run_suite

    csv_text = rows_to_csv(run_suite(suite, repetitions))
    if out_path:
        Path(out_path).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    return 0


def cmd_serve(config: RunConfig, port: int, static_dir: str | None = None) -> int:
    import uvicorn

    from .service import create_app

    try:
        log = load_log(config.input_path)
        log = apply_heuristic(log, config.heuristic)
    except (StackmineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    app = create_app(
        log,
        config.discovery,
        min_depth=config.min_depth,
        max_depth=config.max_depth,
        static_dir=static_dir,
    )
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stackmine")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_common(sub):
        sub.add_argument("--in", dest="input_path", required=True, help="XES or CSV log")
        sub.add_argument(
            "--heuristic",
            default="none",
            choices=["none", "nested-calls", "structured-names", "attribute-combination"],
        )
        sub.add_argument("--separator", default=".")
        sub.add_argument("--attr-keys", default="", help="comma-separated keys")
        sub.add_argument("--mode", default="rad", choices=["naive", "rad", "flat"])
        sub.add_argument("--paths", type=float, default=1.0)
        sub.add_argument("--min-depth", type=int, default=0)
        sub.add_argument("--max-depth", type=int, default=None)

    d = commands.add_parser("discover", help="discover a model and export it")
    add_common(d)
    d.add_argument("--format", default="tree", choices=list(FORMATS))
    d.add_argument("--out", default=None)

    b = commands.add_parser("bench", help="run a synthetic benchmark suite")
    b.add_argument("--suite", required=True, choices=["depth-scaling", "trace-length-scaling"])
    b.add_argument("--repetitions", type=int, default=30)
    b.add_argument("--out", default=None)

    s = commands.add_parser("serve", help="serve the workbench API")
    add_common(s)
    s.add_argument("--port", type=int, default=8000)
    s.add_argument("--static-dir", default=None)
    return parser


def _run_config(args, export_format: str = "tree", out: str | None = None) -> RunConfig:
    return RunConfig(
        input_path=args.input_path,
        heuristic=_heuristic_from_args(args),
        discovery=DiscoveryConfig(paths=args.paths, mode=args.mode),
        min_depth=args.min_depth,
        max_depth=args.max_depth,
        export_format=export_format,
        output_path=out,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "paths", None) is not None and not 0.0 <= args.paths <= 1.0:
        parser.error("--paths must lie in [0, 1]")
    if (
        getattr(args, "max_depth", None) is not None
        and args.min_depth > args.max_depth
    ):
        parser.error("--min-depth must not exceed --max-depth")
    if args.command == "discover":
        return cmd_discover(_run_config(args, args.format, args.out))
    if args.command == "bench":
        return cmd_bench(args.suite, args.repetitions, args.out)
    return cmd_serve(_run_config(args), args.port, args.static_dir)


if __name__ == "__main__":
    sys.exit(main())
