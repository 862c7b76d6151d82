"""Shared fixtures: the running-example method-call log and its known model."""

import pytest

from stackmine import HierLog, act, rec, seq, sub, xor

MAIN = "Main.main()"
INPUT = "Main.input()"
BPROC = "B.process()"
STEP_PRE = "B.stepPre()"
STEP_POST = "B.stepPost()"
APROC = "A.process()"
OUTPUT = "Main.output()"

# start/complete events of one run, in timestamp order: main calls input,
# B.process (which calls stepPre, a nested B.process around A.process, and
# stepPost), then output.
RUN_EVENTS = [
    (MAIN, "start"),
    (INPUT, "start"),
    (INPUT, "complete"),
    (BPROC, "start"),
    (STEP_PRE, "start"),
    (STEP_PRE, "complete"),
    (BPROC, "start"),
    (APROC, "start"),
    (APROC, "complete"),
    (BPROC, "complete"),
    (STEP_POST, "start"),
    (STEP_POST, "complete"),
    (BPROC, "complete"),
    (OUTPUT, "start"),
    (OUTPUT, "complete"),
    (MAIN, "complete"),
]


def run_xes(events=RUN_EVENTS) -> bytes:
    lines = ['<?xml version="1.0" encoding="UTF-8"?>', '<log xes.version="1.0">', "  <trace>"]
    for i, (name, lifecycle) in enumerate(events):
        stamp = f"2024-01-01T10:00:{i:02d}.000+00:00"
        lines.append("    <event>")
        lines.append(f'      <string key="concept:name" value="{name}"/>')
        lines.append(f'      <string key="lifecycle:transition" value="{lifecycle}"/>')
        lines.append(f'      <date key="time:timestamp" value="{stamp}"/>')
        lines.append("    </event>")
    lines.extend(["  </trace>", "</log>", ""])
    return "\n".join(lines).encode("utf-8")


@pytest.fixture
def listing1_xes() -> bytes:
    return run_xes()


@pytest.fixture
def listing1_xes_file(tmp_path, listing1_xes):
    path = tmp_path / "run.xes"
    path.write_bytes(listing1_xes)
    return path


# the hierarchical trace of the run: one column per event, one row per level
TABLE_TRACE = [
    (MAIN, INPUT),
    (MAIN, BPROC, STEP_PRE),
    (MAIN, BPROC, BPROC, APROC),
    (MAIN, BPROC, STEP_POST),
    (MAIN, OUTPUT),
]


@pytest.fixture
def table_log() -> HierLog:
    return HierLog.from_paths([TABLE_TRACE])


@pytest.fixture
def recursive_model():
    """The model of the running example, with the self-call made explicit."""
    return sub(
        MAIN,
        seq(
            act(INPUT),
            sub(BPROC, xor(act(APROC), seq(act(STEP_PRE), rec(BPROC), act(STEP_POST)))),
            act(OUTPUT),
        ),
    )
