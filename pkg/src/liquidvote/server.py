"""JSON API over the tally engine, plus static hosting for the studio UI.

Every request is stateless: the server optionally preloads one election
for convenience, but a posted body can always carry its own.  Tally
responses reuse the exact report serializer the CLI writes, so the two
surfaces produce byte-identical artifacts for identical inputs.
"""

from __future__ import annotations

import json
import math
import mimetypes
import os
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import urlsplit

from .model import (
    METHODS,
    QUOTA_RULES,
    Election,
    InvariantError,
    ValidationError,
    ballot_from_obj,
    decimal12,
    default_quota_rule,
    election_from_obj,
    format_amount,
    normalize_ballot,
    profiles_from_obj,
)
from .report import flows_dot, report_json
from .spread import DEFAULT_PARTS_BUDGET, balloon_heights
from .tally import run_election

_MAX_BODY = 64 * 1024 * 1024


class ApiServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, handler, election: Election | None,
                 profiles, static_dir: str | None):
        super().__init__(address, handler)
        self.election = election
        self.profiles = profiles or {}
        self.static_dir = os.path.realpath(static_dir) if static_dir else None


class ApiHandler(BaseHTTPRequestHandler):
    server: ApiServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):
        pass  # keep test and CLI output clean

    # -- plumbing ----------------------------------------------------------

    def _send(self, status: int, body: bytes,
              ctype: str = "application/json") -> None:
        self.send_response(status)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _json(self, status: int, obj) -> None:
        self._send(status, (json.dumps(obj, indent=2) + "\n").encode("utf-8"))

    def _fail(self, status: int, message: str) -> None:
        self._json(status, {"error": message})

    def _body(self):
        length = int(self.headers.get("Content-Length") or 0)
        if length > _MAX_BODY:
            raise ValidationError("request body too large")
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise ValidationError("empty request body")
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc.msg}") from exc

    def _election_from(self, obj) -> Election:
        if isinstance(obj, dict) and obj.get("election") is not None:
            return election_from_obj(obj["election"])
        if self.server.election is not None:
            return self.server.election
        raise ValidationError("no election: post one or preload with --election")

    # -- routes ------------------------------------------------------------

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        path = urlsplit(self.path).path
        if path == "/methods":
            self._json(200, {
                "methods": list(METHODS),
                "quota_rules": list(QUOTA_RULES),
                "default_quota_rules": {m: default_quota_rule(m)
                                        for m in METHODS},
            })
        elif path == "/election":
            if self.server.election is None:
                self._fail(404, "no election loaded")
            else:
                self._json(200, self.server.election.to_obj())
        elif self.server.static_dir is not None:
            self._static(path)
        else:
            self._fail(404, f"unknown path {path!r}")

    def do_POST(self):
        path = urlsplit(self.path).path
        try:
            obj = self._body()
            if path == "/tally":
                self._tally(obj)
            elif path == "/normalize":
                self._normalize(obj)
            else:
                self._fail(404, f"unknown path {path!r}")
        except ValidationError as exc:
            self._fail(400, str(exc))
        except InvariantError as exc:
            self._fail(500, str(exc))

    # -- handlers ----------------------------------------------------------

    def _tally(self, obj) -> None:
        if not isinstance(obj, dict):
            raise ValidationError("tally body must be a JSON object")
        election = self._election_from(obj)
        raw = obj.get("ballots")
        if not isinstance(raw, list):
            raise ValidationError("tally body needs a 'ballots' array")
        ballots = [ballot_from_obj(b, i) for i, b in enumerate(raw, start=1)]
        profiles = profiles_from_obj(obj["profiles"]) if obj.get("profiles") \
            else {}
        exponent = obj.get("exponent")
        if exponent is not None:
            exponent = float(exponent)
        result = run_election(election, ballots, profiles=profiles,
                              exponent=exponent)
        if obj.get("format") == "dot":
            self._send(200, flows_dot(election, result).encode("utf-8"),
                       ctype="text/vnd.graphviz")
        else:
            self._send(200, report_json(election, result,
                                        ballots=len(ballots)).encode("utf-8"))

    def _normalize(self, obj) -> None:
        if not isinstance(obj, dict) or "ballot" not in obj:
            raise ValidationError("normalize body needs a 'ballot' object")
        election = self._election_from(obj)
        ballot = ballot_from_obj(obj["ballot"], 1)
        normalized = normalize_ballot(ballot, election)
        if normalized.kind == "ranked":
            self._json(200, {"id": normalized.id, "kind": "ranked",
                             "ranking": list(normalized.ranking)})
            return
        budget = obj.get("parts_budget", DEFAULT_PARTS_BUDGET)
        if isinstance(budget, bool) or not isinstance(budget, int) or budget < 1:
            raise ValidationError("parts_budget must be a positive integer")
        shares = normalized.shares
        if election.method == "quadratic":
            # quadratic caps one ballot at the parts budget; reuse the
            # tally's own check so the message matches a real tally run
            balloons = balloon_heights(normalized, budget)
        else:
            balloons = {c: math.sqrt(s * budget) for c, s in shares.items()}
        self._json(200, {
            "id": normalized.id,
            "kind": "parts",
            "parts": dict(normalized.parts),
            "shares": {c: format_amount(s) for c, s in shares.items()},
            "shares_decimal": {c: decimal12(s) for c, s in shares.items()},
            "heights": {c: decimal12(math.sqrt(s)) for c, s in shares.items()},
            "balloon_heights": {c: decimal12(h) for c, h in balloons.items()},
            "parts_budget": budget,
        })

    # -- static files ------------------------------------------------------

    def _static(self, path: str) -> None:
        rel = path.lstrip("/") or "index.html"
        base = self.server.static_dir
        full = os.path.realpath(os.path.join(base, rel))
        if os.path.commonpath([base, full]) != base:
            self._fail(404, "not found")
            return
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.isfile(full):
            self._fail(404, f"unknown path {path!r}")
            return
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            self._send(200, fh.read(), ctype=ctype)


def make_server(host: str = "127.0.0.1", port: int = 0,
                election: Election | None = None, profiles=None,
                static_dir: str | None = None) -> ApiServer:
    return ApiServer((host, port), ApiHandler, election, profiles, static_dir)
