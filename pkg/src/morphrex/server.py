"""HTTP service around the pipeline.

One project is held in memory per server; PUT /project replaces it and
every other endpoint works against it.  All bodies are JSON, all responses
carry permissive CORS headers so a browser UI served from anywhere can call
the service during development.

Routes:
    GET  /project            the loaded project, 404 before any PUT
    PUT  /project            validate and store a project
    POST /analyze            {"text"} -> morphological solutions
    POST /simulate/mbf       {"text"} -> per-word label sets
    POST /simulate/mre       {"text", "maxSteps"?} -> tags and match trees
    POST /actions/run        {"text", "maxSteps"?} -> annotations, output, variables
    POST /extract/relations  {"text", "maxSteps"?} -> entity graph
    POST /diff               {"a", "b", "predicate"?} -> comparison report

Errors return {"error", "stage"}: 400 for bad input, 404 for unknown paths
or a missing project.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .analysis import Tag, comparison_report
from .analysis import PREDICATES as _PREDICATES
from .errors import MorphrexError
from .fileio import (
    SchemaError,
    canonical_json_bytes,
    graph_to_json,
    project_from_json,
    project_to_json,
    tags_payload,
)
from .formula import compute_tag_sequence
from .morphology import analyze_text, solutions_to_json
from .nfa import DEFAULT_MAX_STEPS
from .pipeline import run_project
from .synk import build_gloss_graph

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}


class _BadRequest(Exception):
    def __init__(self, message: str, stage: str = "load"):
        super().__init__(message)
        self.stage = stage


class Session:
    """The mutable server state: at most one loaded project."""

    def __init__(self):
        self.lock = threading.Lock()
        self.project = None
        self.project_json = None
        self.gloss_graph = None

    def set_project(self, data: dict):
        project = project_from_json(data)
        with self.lock:
            self.project = project
            self.project_json = project_to_json(project)
            self.gloss_graph = build_gloss_graph(project.lexicon)

    def snapshot(self):
        with self.lock:
            return self.project, self.gloss_graph


class Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    # --- plumbing ---

    def log_message(self, fmt, *args):  # tests need a quiet server
        pass

    def _headers(self, status: int, length: int, content_type="application/json; charset=utf-8"):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(length))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def _send_json(self, status: int, payload) -> None:
        body = canonical_json_bytes(payload)
        self._headers(status, len(body))
        self.wfile.write(body)

    def _send_error_json(self, status: int, message: str, stage: str = "load") -> None:
        self._send_json(status, {"error": message, "stage": stage})

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise _BadRequest("request body must be JSON")
        try:
            data = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise _BadRequest(f"request body is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise _BadRequest("request body must be a JSON object")
        return data

    def _require_text(self, data: dict) -> str:
        text = data.get("text")
        if not isinstance(text, str):
            raise _BadRequest("field 'text' must be a string")
        return text

    def _max_steps(self, data: dict) -> int:
        value = data.get("maxSteps", DEFAULT_MAX_STEPS)
        if not isinstance(value, int) or value <= 0:
            raise _BadRequest("field 'maxSteps' must be a positive integer")
        return value

    def _project(self):
        project, gloss_graph = self.server.session.snapshot()
        if project is None:
            raise _BadRequest("no project loaded; PUT /project first")
        return project, gloss_graph

    # --- verbs ---

    def do_OPTIONS(self):
        self._headers(204, 0)

    def do_GET(self):
        if self.path == "/project":
            project, _ = self.server.session.snapshot()
            if project is None:
                self._send_error_json(404, "no project loaded")
                return
            self._send_json(200, self.server.session.project_json)
            return
        if self._serve_static():
            return
        self._send_error_json(404, f"unknown path {self.path!r}")

    def do_PUT(self):
        if self.path != "/project":
            self._send_error_json(404, f"unknown path {self.path!r}")
            return
        try:
            data = self._read_body()
            self.server.session.set_project(data)
        except _BadRequest as exc:
            self._send_error_json(400, str(exc), exc.stage)
            return
        except (MorphrexError, SchemaError) as exc:
            self._send_error_json(400, str(exc), getattr(exc, "stage", "load"))
            return
        self._send_json(200, self.server.session.project_json)

    def do_POST(self):
        handlers = {
            "/analyze": self._post_analyze,
            "/simulate/mbf": self._post_simulate_mbf,
            "/simulate/mre": self._post_simulate_mre,
            "/actions/run": self._post_actions_run,
            "/extract/relations": self._post_extract_relations,
            "/diff": self._post_diff,
        }
        handler = handlers.get(self.path)
        if handler is None:
            self._send_error_json(404, f"unknown path {self.path!r}")
            return
        try:
            data = self._read_body()
            payload = handler(data)
        except _BadRequest as exc:
            self._send_error_json(400, str(exc), exc.stage)
            return
        except (MorphrexError, SchemaError) as exc:
            self._send_error_json(400, str(exc), getattr(exc, "stage", "run"))
            return
        self._send_json(200, payload)

    # --- endpoints ---

    def _post_analyze(self, data):
        project, _ = self._project()
        doc = analyze_text(self._require_text(data), project.lexicon)
        return {"solutions": solutions_to_json(doc.entries)}

    def _post_simulate_mbf(self, data):
        project, gloss_graph = self._project()
        doc = analyze_text(self._require_text(data), project.lexicon)
        seq = compute_tag_sequence(doc, project.tag_types, gloss_graph)
        return {
            "words": [
                {"surface": w.surface, "index": w.index, "length": w.length}
                for w in seq.words
            ],
            "perWord": [sorted(labels) for labels in seq.per_word],
        }

    def _post_simulate_mre(self, data):
        project, gloss_graph = self._project()
        result = run_project(
            project,
            self._require_text(data),
            max_steps=self._max_steps(data),
            gloss_graph=gloss_graph,
        )
        return tags_payload(
            result.doc, result.seq, result.matches, project_name=project.name
        )

    def _post_actions_run(self, data):
        project, gloss_graph = self._project()
        result = run_project(
            project,
            self._require_text(data),
            max_steps=self._max_steps(data),
            gloss_graph=gloss_graph,
        )
        payload = tags_payload(
            result.doc,
            result.seq,
            result.matches,
            emitted=result.env.emitted,
            printed=result.env.printed,
            project_name=project.name,
        )
        return {
            "annotations": payload.get("annotations", []),
            "printed": payload.get("printed", []),
            "variables": result.env.variables,
        }

    def _post_extract_relations(self, data):
        project, gloss_graph = self._project()
        result = run_project(
            project,
            self._require_text(data),
            max_steps=self._max_steps(data),
            gloss_graph=gloss_graph,
        )
        return graph_to_json(result.graph, result.doc)

    def _post_diff(self, data):
        def side(name):
            items = data.get(name)
            if not isinstance(items, list):
                raise _BadRequest(f"field {name!r} must be a list of tags")
            tags = []
            for i, obj in enumerate(items):
                if (
                    not isinstance(obj, dict)
                    or not isinstance(obj.get("index"), int)
                    or not isinstance(obj.get("length"), int)
                    or not isinstance(obj.get("label"), str)
                ):
                    raise _BadRequest(
                        f"{name}[{i}] must be an object with index, length, label"
                    )
                tags.append(Tag(obj["index"], obj["length"], obj["label"]))
            return tags

        predicate = data.get("predicate", "exact")
        if predicate not in _PREDICATES:
            raise _BadRequest(f"unknown predicate {predicate!r}")
        return comparison_report(side("a"), side("b"), predicate)

    # --- static files for the browser UI ---

    def _serve_static(self) -> bool:
        root = self.server.ui_dir
        if root is None:
            return False
        rel = self.path.split("?", 1)[0].lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            return False
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            return False
        body = target.read_bytes()
        content_type = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self._headers(200, len(body), content_type)
        self.wfile.write(body)
        return True


def make_server(host: str = "127.0.0.1", port: int = 8750, ui_dir=None) -> ThreadingHTTPServer:
    httpd = ThreadingHTTPServer((host, port), Handler)
    httpd.session = Session()
    httpd.ui_dir = Path(ui_dir).resolve() if ui_dir else None
    return httpd


def serve(host: str = "127.0.0.1", port: int = 8750, ui_dir=None) -> None:
    make_server(host, port, ui_dir).serve_forever()
