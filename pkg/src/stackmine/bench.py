"""Micro-benchmark harness with seeded synthetic log families.

Timings report the mean and a Student-t 95% confidence interval over the
requested repetitions, after warmup rounds.
"""

from __future__ import annotations

import io
import math
import statistics
import time
from dataclasses import dataclass

from .discovery import DiscoveryConfig, discover
from .generators import sample_log
from .logs import HierLog
from .ptree import ActivityLeaf, NamedSubtree, Op, Operator

# two-sided 97.5% Student-t quantiles by degrees of freedom; ~normal beyond 30
_T975 = {
    1: 12.706, 2: 4.303, 3: 3.182, 4: 2.776, 5: 2.571, 6: 2.447, 7: 2.365,
    8: 2.306, 9: 2.262, 10: 2.228, 11: 2.201, 12: 2.179, 13: 2.160, 14: 2.145,
    15: 2.131, 16: 2.120, 17: 2.110, 18: 2.101, 19: 2.093, 20: 2.086,
    21: 2.080, 22: 2.074, 23: 2.069, 24: 2.064, 25: 2.060, 26: 2.056,
    27: 2.052, 28: 2.048, 29: 2.045, 30: 2.042,
}


def ci95(samples) -> float:
    if len(samples) < 2:
        return 0.0
    t = _T975.get(len(samples) - 1, 1.96)
    return t * statistics.stdev(samples) / math.sqrt(len(samples))


def layered_model(depth: int, fanout: int = 20):
    """A deterministic model with one named layer per depth level: each layer
    runs `fanout` steps around a choice and descends into the next layer.
    Per-level alphabets stay small while the flattened alphabet grows with
    depth * fanout, which is what separates decomposed discovery from flat
    discovery on the same events."""
    inner = ActivityLeaf(f"leaf{depth}")
    for level in range(depth, 0, -1):
        steps = tuple(ActivityLeaf(f"s{level}_{i}") for i in range(fanout))
        choice = Operator(
            Op.XOR, (ActivityLeaf(f"x{level}"), ActivityLeaf(f"y{level}"))
        )
        body = Operator(Op.SEQ, steps[: fanout // 2] + (choice,) + steps[fanout // 2:] + (inner,))
        inner = NamedSubtree(f"L{level}", body)
    return inner


def depth_family_log(depth: int, n_traces: int = 500, seed: int = 11) -> HierLog:
    return sample_log(layered_model(depth), seed + depth, n_traces)


def length_family_log(length: int, n_traces: int = 200, seed: int = 23) -> HierLog:
    """Fixed shallow hierarchy, trace length scaled by chaining segments."""
    segment = Operator(
        Op.SEQ,
        (
            ActivityLeaf("open"),
            Operator(Op.XOR, (ActivityLeaf("hit"), ActivityLeaf("miss"))),
            ActivityLeaf("close"),
        ),
    )
    body = NamedSubtree("step", segment)
    chain = Operator(Op.SEQ, tuple(NamedSubtree(f"c{i}", body) for i in range(max(1, length // 3))))
    return sample_log(chain, seed + length, n_traces)


@dataclass(frozen=True)
class BenchRow:
    suite: str
    mode: str
    param: int
    mean_ms: float
    ci95_ms: float | None

    def as_csv(self) -> str:
        ci = "" if self.ci95_ms is None else f"{self.ci95_ms:.3f}"
        return f"{self.suite},{self.mode},{self.param},{self.mean_ms:.3f},{ci}"


def time_discovery(log: HierLog, mode: str, repetitions: int, warmup: int = 3):
    config = DiscoveryConfig(mode=mode)
    for _ in range(warmup):
        discover(log, config)
    samples = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        discover(log, config)
        samples.append((time.perf_counter() - t0) * 1000.0)
    return samples


def run_suite(suite: str, repetitions: int = 30, warmup: int = 3) -> list[BenchRow]:
    if suite == "depth-scaling":
        params = list(range(1, 9))
        logs = {d: depth_family_log(d) for d in params}
    elif suite == "trace-length-scaling":
        params = [6, 12, 24, 48]
        logs = {n: length_family_log(n) for n in params}
    else:
        raise ValueError(f"unknown suite: {suite!r}")
    rows = []
    for param in params:
        for mode in ("naive", "rad", "flat"):
            samples = time_discovery(logs[param], mode, repetitions, warmup)
            mean = statistics.fmean(samples)
            interval = ci95(samples) if repetitions > 1 else None
            rows.append(BenchRow(suite, mode, param, mean, interval))
    return rows


def rows_to_csv(rows) -> str:
    out = io.StringIO()
    out.write("suite,mode,param,mean_ms,ci95_ms\n")
    for row in rows:
        out.write(row.as_csv() + "\n")
    return out.getvalue()
