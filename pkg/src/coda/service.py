"""Session-holding HTTP service.

Wraps the evaluator in a small JSON API so notebooks and other clients
can hold a conversation with a persistent context: definitions made in
one request stay in force for the next. Sessions are kept in memory
with least-recently-used eviction, and each session is guarded by its
own lock so concurrent requests against the same session serialize
instead of racing.

Routes:
    POST /api/sessions              -> {"session_id": ...}
    POST /api/evaluate              -> evaluate source in a session
    GET  /api/definitions?session_id=ID
    GET  /api/history?session_id=ID
    POST /api/demo                  -> run a named demonstration
    POST /api/search                -> enumerate classifiers
"""

from __future__ import annotations

import json
import threading
import uuid
from collections import OrderedDict
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Dict, List, Optional, Tuple
from urllib.parse import parse_qs, urlparse

from .context import Context, serialize_context
from .builtins import BUILTIN_NAMES, std_context
from .demos import DEMOS, run_demo
from .eval import evaluate, render_in, trace_lines
from .language import LiteralError, read_literal, resolve_source
from .spaces import search_classifier

__all__ = ["SessionStore", "CodaService", "make_server", "serve"]

MAX_SESSIONS = 256
MAX_BUDGET = 10_000

# The browser notebook, when its package has been built alongside this one.
STATIC_ROOT: Optional[Path] = Path(__file__).resolve().parents[2] / "frontend"
_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".map": "application/json",
    ".css": "text/css; charset=utf-8",
}


class Session:
    """One conversation: a context plus the lines that shaped it."""

    def __init__(self, session_id: str, context: Context) -> None:
        self.session_id = session_id
        self.context = context
        self.history: List[dict] = []
        self.lock = threading.Lock()


class SessionStore:
    """Thread-safe LRU map of session id to session."""

    def __init__(self, alphabet: Optional[bytes] = None,
                 max_sessions: int = MAX_SESSIONS) -> None:
        self._alphabet = alphabet
        self._max = max_sessions
        self._sessions: "OrderedDict[str, Session]" = OrderedDict()
        self._lock = threading.Lock()

    def create(self) -> Session:
        session = Session(uuid.uuid4().hex, std_context(self._alphabet))
        with self._lock:
            self._sessions[session.session_id] = session
            while len(self._sessions) > self._max:
                self._sessions.popitem(last=False)
        return session

    def get(self, session_id: str) -> Optional[Session]:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None:
                self._sessions.move_to_end(session_id)
            return session


class ApiError(Exception):
    def __init__(self, status: int, message: str) -> None:
        super().__init__(message)
        self.status = status
        self.message = message


class CodaService:
    """Route handlers, independent of the HTTP plumbing."""

    def __init__(self, alphabet: Optional[bytes] = None) -> None:
        self.store = SessionStore(alphabet)

    # -- helpers ---------------------------------------------------

    def _session(self, session_id) -> Session:
        if not isinstance(session_id, str):
            raise ApiError(400, "session_id must be a string")
        session = self.store.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session: {session_id}")
        return session

    @staticmethod
    def _budget(body: dict, default: int = 10) -> int:
        budget = body.get("budget", default)
        if not isinstance(budget, int) or not (1 <= budget <= MAX_BUDGET):
            raise ApiError(400, "budget must be an integer in [1, 10000]")
        return budget

    # -- routes ----------------------------------------------------

    def create_session(self, body: dict) -> dict:
        session = self.store.create()
        return {"session_id": session.session_id}

    def evaluate(self, body: dict) -> dict:
        session = self._session(body.get("session_id"))
        source = body.get("source")
        if not isinstance(source, str):
            raise ApiError(400, "source must be a string")
        budget = self._budget(body)
        want_trace = bool(body.get("trace", False))
        with session.lock:
            try:
                trace = evaluate(session.context, resolve_source(source),
                                 budget=budget)
            except Exception as exc:
                raise ApiError(400, f"evaluation failed: {exc}")
            session.context = trace.end_context
            final = render_in(trace.end_context, trace.final)
            steps = trace_lines(trace) if want_trace else []
            entry = {
                "source": source,
                "budget": budget,
                "final": final,
                "logic": trace.logic.value,
                "status": trace.status.value,
            }
            session.history.append(entry)
        return {
            "session_id": session.session_id,
            "steps": steps,
            "status": trace.status.value,
            "logic": trace.logic.value,
            "undecidable_hint": trace.undecidable_hint,
            "final": final,
        }

    def definitions(self, query: dict) -> dict:
        session = self._session(_first(query, "session_id"))
        with session.lock:
            text = serialize_context(session.context)
        return {
            "session_id": session.session_id,
            "definitions": text.splitlines(),
        }

    def history(self, query: dict) -> dict:
        session = self._session(_first(query, "session_id"))
        with session.lock:
            entries = list(session.history)
        return {"session_id": session.session_id, "history": entries}

    def demo(self, body: dict) -> dict:
        name = body.get("name")
        if name not in DEMOS:
            raise ApiError(400, f"unknown demo: {name!r}")
        budget = body.get("budget")
        if budget is not None and (not isinstance(budget, int)
                                   or not 1 <= budget <= MAX_BUDGET):
            raise ApiError(400, "budget must be an integer in [1, 10000]")
        report = run_demo(name, budget)
        return {
            "name": report.name,
            "verdict": report.verdict.value,
            "ok": report.ok,
            "notes": report.notes,
            "undecidable_hint": report.undecidable_hint,
            "steps": list(report.steps),
        }

    def search(self, body: dict) -> dict:
        def parse_samples(key: str):
            raw = body.get(key)
            if not isinstance(raw, list) or \
                    not all(isinstance(s, str) for s in raw):
                raise ApiError(400, f"{key} must be a list of strings")
            try:
                return [read_literal(s) for s in raw]
            except LiteralError as exc:
                raise ApiError(400, f"bad sample in {key}: {exc}")

        positives = parse_samples("positives")
        negatives = parse_samples("negatives")
        vocabulary = body.get("vocabulary", list(BUILTIN_NAMES))
        if not isinstance(vocabulary, list) or \
                not all(isinstance(w, str) for w in vocabulary):
            raise ApiError(400, "vocabulary must be a list of strings")
        max_terms = body.get("max_terms", 2)
        if not isinstance(max_terms, int) or not 1 <= max_terms <= 3:
            raise ApiError(400, "max_terms must be an integer in [1, 3]")
        budget = self._budget(body)
        stop_after = body.get("stop_after")
        if stop_after is not None and (not isinstance(stop_after, int)
                                       or stop_after < 1):
            raise ApiError(400, "stop_after must be a positive integer")
        result = search_classifier(
            std_context(), vocabulary, positives, negatives,
            max_terms=max_terms, budget=budget, stop_after=stop_after)
        return {
            "accepted": [" ".join(combo) for combo in result.accepted],
            "tried": result.tried,
            "elapsed": result.elapsed,
        }


def _first(query: dict, key: str) -> Optional[str]:
    values = query.get(key)
    return values[0] if values else None


class _Handler(BaseHTTPRequestHandler):
    service: CodaService  # set by make_server

    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # keep test output quiet
        pass

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            body = json.loads(raw)
        except ValueError:
            raise ApiError(400, "request body is not valid JSON")
        if not isinstance(body, dict):
            raise ApiError(400, "request body must be a JSON object")
        return body

    def _dispatch(self, method: str) -> Tuple[int, dict]:
        parsed = urlparse(self.path)
        routes: Dict[Tuple[str, str], object] = {
            ("POST", "/api/sessions"): self.service.create_session,
            ("POST", "/api/evaluate"): self.service.evaluate,
            ("POST", "/api/demo"): self.service.demo,
            ("POST", "/api/search"): self.service.search,
            ("GET", "/api/definitions"): self.service.definitions,
            ("GET", "/api/history"): self.service.history,
        }
        handler = routes.get((method, parsed.path))
        if handler is None:
            raise ApiError(404, f"no route: {method} {parsed.path}")
        if method == "POST":
            return 200, handler(self._read_body())
        return 200, handler(parse_qs(parsed.query))

    def _try_static(self, raw_path: str) -> bool:
        """Serve the notebook page and its compiled assets, if present.

        Files come from the sibling frontend directory; anything that
        resolves outside it (or does not exist) falls through to the
        JSON 404 so the API surface stays the source of truth.
        """
        root = STATIC_ROOT
        if root is None or not root.is_dir():
            return False
        name = urlparse(raw_path).path
        if name == "/":
            name = "/index.html"
        if not (name == "/index.html" or name.startswith("/dist/")):
            return False
        target = (root / name.lstrip("/")).resolve()
        try:
            target.relative_to(root.resolve())
        except ValueError:
            return False
        if not target.is_file():
            return False
        body = target.read_bytes()
        ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)
        return True

    def _run(self, method: str) -> None:
        try:
            status, payload = self._dispatch(method)
        except ApiError as exc:
            status, payload = exc.status, {"error": exc.message}
        except Exception as exc:
            status, payload = 500, {"error": f"internal error: {exc}"}
        self._send(status, payload)

    def do_GET(self) -> None:
        if not self.path.startswith("/api/") and self._try_static(self.path):
            return
        self._run("GET")

    def do_POST(self) -> None:
        self._run("POST")


def make_server(host: str = "127.0.0.1", port: int = 8787,
                alphabet: Optional[bytes] = None) -> ThreadingHTTPServer:
    service = CodaService(alphabet)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def serve(host: str = "127.0.0.1", port: int = 8787,
          alphabet: Optional[str] = None) -> None:
    server = make_server(
        host, port, alphabet.encode("latin-1") if alphabet else None)
    address = server.server_address
    print(f"serving on http://{address[0]}:{address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
