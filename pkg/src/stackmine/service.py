"""Local HTTP service backing the interactive workbench.

The loaded log is immutable; model responses are memoized per parameter tuple
and byte-identical across repeated queries.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import HTMLResponse, JSONResponse, Response

from .discovery import DiscoveryConfig, discover
from .export import tree_to_obj
from .logs import HierLog, log_stats
from .ptree import ActivityLeaf, NamedSubtree
from .rewrite import depth_filter

_FALLBACK_PAGE = """<!doctype html>
<html><head><title>stackmine workbench</title></head>
<body>
<h1>stackmine workbench</h1>
<p>No static bundle found. The API is live:
<a href="/api/stats">/api/stats</a>,
<code>/api/model?paths=1.0&amp;min_depth=0&amp;max_depth=99</code>,
<code>/api/search?q=...</code></p>
</body></html>"""


def annotate_ids(obj: dict, node_id: str = "0") -> dict:
    out = {"id": node_id}
    out.update(obj)
    if "children" in obj:
        out["children"] = [
            annotate_ids(child, f"{node_id}.{i}")
            for i, child in enumerate(obj["children"])
        ]
    return out


def _search_ids(tree, query: str) -> list[str]:
    """Ids of defining nodes (activity leaves and named subtrees) whose
    activity contains the query; back-reference leaves are links, not hits."""
    hits = []

    def visit(node, node_id: str):
        if isinstance(node, ActivityLeaf) and query in node.activity:
            hits.append(node_id)
        elif isinstance(node, NamedSubtree) and query in node.name:
            hits.append(node_id)
        from .ptree import children_of

        for i, child in enumerate(children_of(node)):
            visit(child, f"{node_id}.{i}")

    visit(tree, "0")
    return hits


def create_app(
    log: HierLog,
    discovery: DiscoveryConfig | None = None,
    min_depth: int = 0,
    max_depth: int | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    discovery = discovery or DiscoveryConfig()
    app = FastAPI(title="stackmine workbench")
    memo: dict[tuple, bytes] = {}
    stats_payload = json.dumps(log_stats(log).to_dict(), indent=2).encode("utf-8")
    base_tree = discover(log, discovery)

    def build_model(paths: float, lo: int, hi: int | None) -> bytes:
        key = (paths, lo, hi)
        cached = memo.get(key)
        if cached is not None:
            return cached
        tree = discover(log, DiscoveryConfig(paths=paths, mode=discovery.mode))
        tree = depth_filter(tree, lo, hi)
        payload = json.dumps(annotate_ids(tree_to_obj(tree)), indent=2).encode("utf-8")
        memo[key] = payload
        return payload

    @app.get("/api/model")
    def api_model(paths: str = "", min_depth: str = "", max_depth: str = ""):
        try:
            p = float(paths) if paths != "" else discovery.paths
            lo = int(min_depth) if min_depth != "" else 0
            hi = int(max_depth) if max_depth != "" else None
        except ValueError:
            return JSONResponse({"error": "malformed parameter"}, status_code=400)
        if not 0.0 <= p <= 1.0:
            return JSONResponse({"error": "paths must lie in [0, 1]"}, status_code=400)
        if hi is not None and lo > hi:
            return JSONResponse(
                {"error": "min_depth must not exceed max_depth"}, status_code=400
            )
        try:
            payload = build_model(p, lo, hi)
        except Exception as exc:  # discovery/filter failure
            return JSONResponse({"error": str(exc)}, status_code=422)
        return Response(content=payload, media_type="application/json")

    @app.get("/api/stats")
    def api_stats():
        return Response(content=stats_payload, media_type="application/json")

    @app.get("/api/search")
    def api_search(q: str = ""):
        if not q:
            return JSONResponse({"query": q, "ids": []})
        return JSONResponse({"query": q, "ids": _search_ids(base_tree, q)})

    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="workbench")
    else:

        @app.get("/", response_class=HTMLResponse)
        def index():
            return HTMLResponse(_FALLBACK_PAGE)

    return app
