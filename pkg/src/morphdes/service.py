"""JSON-over-HTTP service exposing ranking, solving, and what-if analysis.

The service holds one model at a time.  ``PUT /api/model`` swaps it
atomically: a request sees either the old or the new model, never a mix,
because every handler takes a single snapshot reference up front and all
solver calls are read-only.  Responses come from the same document builders
as the CLI, so payloads are byte-identical between the two.
"""

from __future__ import annotations

import json
import sys
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import gateway, modelfile
from .errors import (
    InfeasibleNodeError,
    ModelfileError,
    MorphdesError,
    TargetNotFoundError,
)
from .model import SystemModel
from .modelfile import diagnostics_to_doc, dumps, model_to_doc
from .ranking import RankingParams

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
    ".map": "application/json",
}


class ModelHost:
    """Mutable holder for the current model; swaps are atomic."""

    def __init__(self, model: SystemModel):
        self._model = model
        self._lock = threading.Lock()

    def snapshot(self) -> SystemModel:
        return self._model

    def swap_text(self, text: str) -> SystemModel:
        model = modelfile.parse(text)
        with self._lock:
            self._model = model
        return model

    def swap_doc(self, doc: dict) -> SystemModel:
        model = modelfile.model_from_doc(doc)
        with self._lock:
            self._model = model
        return model


@dataclass
class _AppConfig:
    host: ModelHost
    ui_dir: Path | None = None
    quiet: bool = True


class _Handler(BaseHTTPRequestHandler):
    server_version = "morphdes"

    @property
    def app(self) -> _AppConfig:
        return self.server.app  # type: ignore[attr-defined]

    def log_message(self, fmt, *args):
        if not self.app.quiet:
            sys.stderr.write(f"{self.address_string()} - {fmt % args}\n")

    # -- plumbing -----------------------------------------------------------

    def _send_doc(self, status: int, doc: dict) -> None:
        payload = dumps(doc).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def _read_body(self) -> bytes:
        length = int(self.headers.get("Content-Length") or 0)
        return self.rfile.read(length) if length else b""

    def _json_body(self) -> dict:
        raw = self._read_body()
        if not raw:
            return {}
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as exc:
            raise gateway.CommandFailure(
                gateway.error_doc("bad-request", message=f"invalid JSON body: {exc}"),
                str(exc))
        if not isinstance(doc, dict):
            raise gateway.CommandFailure(
                gateway.error_doc("bad-request", message="JSON body must be an object"),
                "JSON body must be an object")
        return doc

    def _query(self) -> dict[str, str]:
        parsed = parse_qs(urlparse(self.path).query)
        return {key: values[-1] for key, values in parsed.items()}

    def _route(self) -> str:
        return urlparse(self.path).path

    def _guard(self, handler) -> None:
        try:
            handler()
        except ModelfileError as exc:
            self._send_doc(422, gateway.error_doc(
                "parse-failed", diagnostics=diagnostics_to_doc(exc.diagnostics)))
        except gateway.CommandFailure as exc:
            status = {"not-found": 404, "bad-request": 400}.get(exc.doc.get("error"), 400)
            self._send_doc(status, exc.doc)
        except InfeasibleNodeError as exc:
            self._send_doc(409, gateway.error_doc("infeasible-node", node=exc.node_id))
        except TargetNotFoundError as exc:
            self._send_doc(404, gateway.error_doc("not-found", message=str(exc)))
        except (MorphdesError, ValueError) as exc:
            self._send_doc(400, gateway.error_doc("bad-request", message=str(exc)))

    # -- verbs ---------------------------------------------------------------

    def do_GET(self):  # noqa: N802 (http.server casing)
        route = self._route()
        if route == "/api/model":
            self._guard(lambda: self._send_doc(200, model_to_doc(self.app.host.snapshot())))
        elif route == "/api/space":
            self._guard(lambda: self._send_doc(200, gateway.doc_space(self.app.host.snapshot())))
        elif route == "/api/solve":
            self._guard(self._get_solve)
        elif route == "/api/bottlenecks":
            self._guard(self._get_bottlenecks)
        elif self.app.ui_dir is not None and not route.startswith("/api/"):
            self._serve_static(route)
        else:
            self._send_doc(404, gateway.error_doc("not-found", message=f"no route {route}"))

    def do_PUT(self):  # noqa: N802
        if self._route() != "/api/model":
            self._send_doc(404, gateway.error_doc("not-found", message="PUT supports /api/model"))
            return

        def handler():
            content_type = (self.headers.get("Content-Type") or "").split(";")[0].strip()
            raw = self._read_body()
            if content_type == "application/json":
                doc = json.loads(raw.decode("utf-8"))
                model = self.app.host.swap_doc(doc)
            else:
                model = self.app.host.swap_text(raw.decode("utf-8"))
            self._send_doc(200, model_to_doc(model))

        self._guard(handler)

    def do_POST(self):  # noqa: N802
        route = self._route()
        if route == "/api/rank":
            self._guard(self._post_rank)
        elif route == "/api/whatif":
            self._guard(self._post_whatif)
        else:
            self._send_doc(404, gateway.error_doc("not-found", message=f"no route {route}"))

    # -- endpoint bodies -------------------------------------------------------

    def _get_solve(self):
        model = self.app.host.snapshot()
        query = self._query()
        node = query.get("node")
        carry = int(query.get("carry_layers", "1"))
        self._send_doc(200, gateway.doc_solve(model, node, carry))

    def _get_bottlenecks(self):
        model = self.app.host.snapshot()
        query = self._query()
        node = query.get("node")
        if node is None or "decision" not in query:
            raise gateway.CommandFailure(
                gateway.error_doc("bad-request",
                                  message="query parameters 'node' and 'decision' are required"),
                "missing query parameters")
        self._send_doc(200, gateway.doc_bottlenecks(model, node, int(query["decision"])))

    def _post_rank(self):
        model = self.app.host.snapshot()
        body = self._json_body()
        params = RankingParams.from_model(model)
        if "p" in body or "q" in body:
            params = RankingParams(
                concordance_p=_ratio_field(body.get("p", params.concordance_p)),
                discordance_q=_ratio_field(body.get("q", params.discordance_q)),
            )
        self._send_doc(200, gateway.doc_rank(model, params, bool(body.get("recompute"))))

    def _post_whatif(self):
        model = self.app.host.snapshot()
        body = self._json_body()
        node = body.get("node")
        if not isinstance(node, str):
            raise gateway.CommandFailure(
                gateway.error_doc("bad-request", message="'node' must be a part id"),
                "'node' must be a part id")
        actions = body.get("actions")
        if not isinstance(actions, list) or not all(isinstance(a, str) for a in actions):
            raise gateway.CommandFailure(
                gateway.error_doc("bad-request",
                                  message="'actions' must be a list of action specs"),
                "'actions' must be a list of action specs")
        self._send_doc(200, gateway.doc_whatif(model, node, body.get("decision"), actions))

    # -- static UI ---------------------------------------------------------------

    def _serve_static(self, route: str):
        base = self.app.ui_dir.resolve()
        name = route.lstrip("/") or "index.html"
        target = (base / name).resolve()
        if not str(target).startswith(str(base)) or not target.is_file():
            self._send_doc(404, gateway.error_doc("not-found", message=f"no file {route}"))
            return
        payload = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type",
                         _CONTENT_TYPES.get(target.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)


def _ratio_field(value):
    if isinstance(value, (int, float, str)):
        return value
    raise gateway.CommandFailure(
        gateway.error_doc("bad-request", message="thresholds must be numbers"),
        "thresholds must be numbers")


def create_server(model: SystemModel, host: str = "127.0.0.1", port: int = 0,
                  ui_dir: str | None = None, quiet: bool = True) -> ThreadingHTTPServer:
    """Bind and return the server without starting it (callers run
    ``serve_forever``); ``port=0`` picks a free port."""
    server = ThreadingHTTPServer((host, port), _Handler)
    server.app = _AppConfig(  # type: ignore[attr-defined]
        host=ModelHost(model),
        ui_dir=Path(ui_dir) if ui_dir else None,
        quiet=quiet,
    )
    return server


def serve(model: SystemModel, host: str, port: int, ui_dir: str | None = None,
          model_path: str | None = None) -> int:
    try:
        server = create_server(model, host, port, ui_dir, quiet=False)
    except OSError as exc:
        sys.stderr.write(f"error: cannot bind {host}:{port}: {exc}\n")
        return 1
    bound = server.server_address
    origin = f" (model: {model_path})" if model_path else ""
    sys.stderr.write(f"morphdes service listening on http://{bound[0]}:{bound[1]}{origin}\n")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0
