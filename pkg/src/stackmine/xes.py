"""XES and CSV readers plus a matching XES writer.

Only a small XES subset is understood: `log`, `trace` and `event` elements,
with `concept:name` required on events and `lifecycle:transition` plus
`time:timestamp` picked up when present.  Unknown attributes are preserved as
opaque text.
"""

from __future__ import annotations

import csv
import io
import xml.etree.ElementTree as ET
from xml.sax.saxutils import quoteattr

from .errors import MalformedXmlError, MissingConceptNameError
from .logs import Event, HierLog, HierTrace

CONCEPT_NAME = "concept:name"
LIFECYCLE = "lifecycle:transition"
TIMESTAMP = "time:timestamp"


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _collect_attrs(elem) -> dict[str, str]:
    attrs = {}
    for child in elem:
        if _local(child.tag) in ("string", "date", "int", "float", "boolean", "id"):
            key = child.get("key")
            value = child.get("value")
            if key is not None and value is not None:
                attrs[key] = value
    return attrs


def parse_xes(data: bytes | str) -> HierLog:
    """Parse a XES document into a depth-1 log.

    Fails whole-log: any malformed XML or event without concept:name raises
    without returning a partial result.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXmlError(f"unparseable XES input: {exc}") from exc
    if _local(root.tag) != "log":
        raise MalformedXmlError(f"expected <log> root element, got <{_local(root.tag)}>")
    traces = []
    for trace_elem in root:
        if _local(trace_elem.tag) != "trace":
            continue
        events = []
        for event_elem in trace_elem:
            if _local(event_elem.tag) != "event":
                continue
            attrs = _collect_attrs(event_elem)
            name = attrs.pop(CONCEPT_NAME, None)
            if name is None:
                raise MissingConceptNameError(
                    f"event {len(events)} in trace {len(traces)} lacks {CONCEPT_NAME}"
                )
            events.append(Event.of(name, **attrs))
        traces.append(HierTrace(tuple(events)))
    return HierLog(tuple(traces))


def parse_xes_file(path) -> HierLog:
    with open(path, "rb") as handle:
        return parse_xes(handle.read())


def write_xes(log: HierLog) -> bytes:
    """Serialize a depth-1 log back to the same XES subset.

    Deeper events are written with their dotted path as the activity name.
    """
    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write('<log xes.version="1.0">\n')
    for trace in log.traces:
        out.write("  <trace>\n")
        for event in trace.events:
            out.write("    <event>\n")
            name = ".".join(event.path)
            out.write(f"      <string key={quoteattr(CONCEPT_NAME)} value={quoteattr(name)}/>\n")
            for key, value in event.attrs:
                kind = "date" if key == TIMESTAMP else "string"
                out.write(f"      <{kind} key={quoteattr(key)} value={quoteattr(value)}/>\n")
            out.write("    </event>\n")
        out.write("  </trace>\n")
    out.write("</log>\n")
    return out.getvalue().encode("utf-8")


def parse_csv(data: bytes | str) -> HierLog:
    """Read a flat log from CSV with columns case,activity,lifecycle,timestamp.

    The header row is required; rows are grouped by case in file order.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.DictReader(io.StringIO(data))
    required = {"case", "activity"}
    if reader.fieldnames is None or not required.issubset(set(reader.fieldnames)):
        raise MalformedXmlError("CSV header must include at least: case,activity")
    cases: dict[str, list[Event]] = {}
    order: list[str] = []
    for row in reader:
        case = row["case"]
        if case not in cases:
            cases[case] = []
            order.append(case)
        attrs = {}
        if row.get("lifecycle"):
            attrs[LIFECYCLE] = row["lifecycle"]
        if row.get("timestamp"):
            attrs[TIMESTAMP] = row["timestamp"]
        if not row["activity"]:
            raise MissingConceptNameError(f"row for case {case!r} lacks an activity")
        cases[case].append(Event.of(row["activity"], **attrs))
    return HierLog(tuple(HierTrace(tuple(cases[c])) for c in order))


def parse_csv_file(path) -> HierLog:
    with open(path, "rb") as handle:
        return parse_csv(handle.read())


__all__ = [
    "CONCEPT_NAME",
    "LIFECYCLE",
    "TIMESTAMP",
    "parse_xes",
    "parse_xes_file",
    "write_xes",
    "parse_csv",
    "parse_csv_file",
]
