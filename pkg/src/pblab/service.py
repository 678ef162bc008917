"""Local JSON-over-HTTP service exposing the run workflows.

Stateless by construction: every request carries a full scene document, no
session survives a request, and handlers share no mutable state, so the
threading server may process requests concurrently.  Intended for loopback
use by the bundled UI; CORS headers are permissive.

POST /api/orbit    {"scene": {...}, "steps": 12}
POST /api/verify   {"scene": {...}, "period": 6}
POST /api/scan     {"scene": {...}, "period": 6, "grid": 20}
POST /api/dualize  {"scene": {...}, "steps": 12}
GET  /api/health

Malformed documents return 400 with the SchemaError path and reason;
geometrically invalid ones return 422.
"""

from __future__ import annotations

import json
import os
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional, Tuple

from .errors import GeometryError, SchemaError, SceneError, ValidationError
from .runs import run_dualize, run_orbit, run_scan, run_verify
from .scene import parse_scene

DEFAULT_PORT = 8173
PORT_ENV_VAR = "PBLAB_PORT"

_MAX_BODY = 4 * 1024 * 1024


def resolve_port(explicit: Optional[int] = None) -> int:
    """Explicit port, else the PBLAB_PORT environment variable, else 8173."""
    if explicit is not None:
        return explicit
    env = os.environ.get(PORT_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"{PORT_ENV_VAR} must be an integer, got {env!r}") from exc
    return DEFAULT_PORT


def _error_body(kind: str, exc: Exception) -> dict:
    body = {"error": {"type": kind, "message": str(exc)}}
    if isinstance(exc, SceneError):
        body["error"]["path"] = exc.path
        body["error"]["reason"] = exc.reason
    return body


class _Handler(BaseHTTPRequestHandler):
    server_version = "pblab"
    protocol_version = "HTTP/1.1"

    # silence the default stderr access log; failures surface as responses
    def log_message(self, format, *args):
        pass

    def _send_json(self, status: int, payload: dict):
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        if self.path == "/api/health":
            self._send_json(200, {"status": "ok"})
            return
        self._send_json(404, {"error": {"type": "NotFound", "message": self.path}})

    def do_POST(self):
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            length = 0
        handler = _ROUTES.get(self.path)
        if handler is None:
            # consume the unread body; leftover bytes would be parsed as the
            # next request line on a reused keep-alive connection
            if 0 < length <= _MAX_BODY:
                self.rfile.read(length)
            elif length != 0:
                self.close_connection = True
            self._send_json(404, {"error": {"type": "NotFound", "message": self.path}})
            return
        if length <= 0 or length > _MAX_BODY:
            if length > _MAX_BODY:
                self.close_connection = True
            self._send_json(
                400,
                {"error": {"type": "SchemaError", "message": "missing or oversized body"}},
            )
            return
        raw = self.rfile.read(length)
        try:
            body = json.loads(raw)
            if not isinstance(body, dict):
                raise SchemaError("$", "request body must be a JSON object")
            scene = parse_scene(body.get("scene", {}))
            result = handler(scene, body)
        except ValidationError as exc:
            self._send_json(422, _error_body("ValidationError", exc))
            return
        except SchemaError as exc:
            self._send_json(400, _error_body("SchemaError", exc))
            return
        except json.JSONDecodeError as exc:
            self._send_json(400, {"error": {"type": "SchemaError", "message": str(exc)}})
            return
        except (GeometryError, ValueError) as exc:
            self._send_json(422, _error_body(type(exc).__name__, exc))
            return
        self._send_json(200, result)


def _opt_int(body: dict, key: str) -> Optional[int]:
    value = body.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(key, "expected an integer")
    return value


_ROUTES = {
    "/api/orbit": lambda scene, body: run_orbit(scene, steps=_opt_int(body, "steps")),
    "/api/verify": lambda scene, body: run_verify(scene, period=_opt_int(body, "period")),
    "/api/scan": lambda scene, body: run_scan(
        scene, period=_opt_int(body, "period"), grid=_opt_int(body, "grid")
    ),
    "/api/dualize": lambda scene, body: run_dualize(scene, steps=_opt_int(body, "steps")),
}


def make_server(port: int = 0, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Bound but not yet serving; port 0 picks a free ephemeral port."""
    return ThreadingHTTPServer((host, port), _Handler)


def serve(port: Optional[int] = None, host: str = "127.0.0.1"):
    """Serve until interrupted, printing the bound address once."""
    server = make_server(resolve_port(port), host)
    bound = server.server_address
    print(f"pblab service listening on http://{bound[0]}:{bound[1]}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def start_background(port: int = 0) -> Tuple[ThreadingHTTPServer, threading.Thread]:
    """Start a server on a daemon thread; used by tests and fixture tooling."""
    server = make_server(port)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, thread
