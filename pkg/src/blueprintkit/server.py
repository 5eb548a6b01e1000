"""Local HTTP service backing the curation UI.

The filesystem is the store: one ``<key>.json`` blueprint per system in
the root directory, with optional ``<key>.extraction.json`` provenance
records beside them. Writes use optimistic concurrency: every blueprint
carries an in-memory version counter exposed as an ETag, PUTs must
present it via If-Match, and a stale version yields 409. Writes to one
key are serialized by a per-key lock; reads never block.

Endpoints (all JSON):
    GET  /systems                    index of {key, title, year, review_status}
    GET  /systems/{key}              blueprint document (ETag: version)
    PUT  /systems/{key}              replace (If-Match required on existing keys)
    GET  /systems/{key}/graph        multi-level graph dump for the UI
    GET  /stats?metric=...&level=... corpus statistics over the root dir
    POST /extract                    {key, paper_text, max_refinements?}
    GET  /queue                      extraction records still in draft
    POST /systems/{key}/review       {action: accept|needs_revision, instructions?}

CORS is enabled for localhost origins so a separately served UI can
talk to the service; there is no authentication beyond --read-only.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any

from . import corpus as corpus_ops
from .extract import (
    ExtractionRecord,
    PromptSpec,
    REVIEW_ACCEPTED,
    REVIEW_DRAFT,
    REVIEW_NEEDS_REVISION,
    ExtractionTransportError,
    load_record,
    refine_extraction,
    run_extraction,
    save_record,
)
from .graph import build_graph, graph_to_wire, level_from_name
from .labels import SynonymTable
from .model import SystemBlueprint, serialize_blueprint
from .transport import TransportConfig, TransportError
from .validation import parse_blueprint

_KEY_RE = re.compile(r"^[A-Za-z0-9._-]+$")


def _valid_key(key: str) -> bool:
    return bool(_KEY_RE.match(key)) and ".." not in key and not key.endswith(".extraction")


class VersionConflict(Exception):
    def __init__(self, current: int):
        self.current = current
        super().__init__(f"version conflict, current is {current}")


class BlueprintStore:
    """File-backed blueprint store with per-key versions and write locks."""

    def __init__(self, root: str | Path, mode: str = "strict", read_only: bool = False):
        self.root = Path(root)
        if not self.root.is_dir():
            raise NotADirectoryError(f"{self.root} is not a directory")
        self.mode = mode
        self.read_only = read_only
        self._state_lock = threading.Lock()
        self._versions: dict[str, int] = {key: 1 for key in self._scan_keys()}
        self._key_locks: dict[str, threading.Lock] = {}

    def _scan_keys(self) -> list[str]:
        return sorted(
            p.stem
            for p in self.root.glob("*.json")
            if not p.name.endswith(corpus_ops.RECORD_SUFFIX)
        )

    def _blueprint_path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def _record_path(self, key: str) -> Path:
        return self.root / f"{key}{corpus_ops.RECORD_SUFFIX}"

    def _lock_for(self, key: str) -> threading.Lock:
        with self._state_lock:
            return self._key_locks.setdefault(key, threading.Lock())

    def keys(self) -> list[str]:
        return self._scan_keys()

    def version(self, key: str) -> int | None:
        with self._state_lock:
            return self._versions.get(key)

    def read(self, key: str) -> tuple[bytes, int] | None:
        path = self._blueprint_path(key)
        with self._lock_for(key):
            if not path.is_file():
                return None
            raw = path.read_bytes()
            with self._state_lock:
                version = self._versions.setdefault(key, 1)
            return raw, version

    def write(self, key: str, bp: SystemBlueprint, expected_version: int | None) -> int:
        """Atomically replace a blueprint; bump and return its version.

        ``expected_version`` None means create-only (the key must not
        exist yet). A mismatch raises VersionConflict.
        """
        path = self._blueprint_path(key)
        with self._lock_for(key):
            with self._state_lock:
                current = self._versions.get(key)
            if expected_version is None:
                if current is not None or path.is_file():
                    raise VersionConflict(current or 1)
            elif current is None or expected_version != current:
                raise VersionConflict(current or 0)
            tmp = path.with_suffix(".json.tmp")
            tmp.write_text(serialize_blueprint(bp), encoding="utf-8")
            tmp.replace(path)
            with self._state_lock:
                new_version = (current or 0) + 1
                self._versions[key] = new_version
            return new_version

    def load_record(self, key: str) -> ExtractionRecord | None:
        path = self._record_path(key)
        if not path.is_file():
            return None
        return load_record(path)

    def save_record(self, key: str, record: ExtractionRecord) -> None:
        save_record(record, self._record_path(key))

    def store_extraction(self, key: str, record: ExtractionRecord) -> int | None:
        """Persist an extraction outcome: record always, blueprint when Valid."""
        version = None
        if record.blueprint is not None:
            with self._lock_for(key):
                tmp = self._blueprint_path(key).with_suffix(".json.tmp")
                tmp.write_text(serialize_blueprint(record.blueprint), encoding="utf-8")
                tmp.replace(self._blueprint_path(key))
                with self._state_lock:
                    version = self._versions.get(key, 0) + 1
                    self._versions[key] = version
        self.save_record(key, record)
        return version


@dataclass
class ServeConfig:
    store: BlueprintStore
    synonyms: SynonymTable
    transport_cfg: TransportConfig | None = None
    max_refinements: int = 3


class _Handler(BaseHTTPRequestHandler):
    server_version = "blueprintkit"
    cfg: ServeConfig  # attached by make_server

    # ------------------------------------------------------------- plumbing

    def log_message(self, format: str, *args: Any) -> None:  # noqa: A002
        pass  # desk-scale tool; request logging stays quiet

    def _cors_headers(self) -> list[tuple[str, str]]:
        origin = self.headers.get("Origin")
        headers = []
        if origin and ("://localhost" in origin or "://127.0.0.1" in origin):
            headers.append(("Access-Control-Allow-Origin", origin))
            headers.append(("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS"))
            headers.append(("Access-Control-Allow-Headers", "Content-Type, If-Match"))
            headers.append(("Access-Control-Expose-Headers", "ETag"))
        return headers

    def _send(self, status: int, payload: Any, etag: int | None = None) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        if etag is not None:
            self.send_header("ETag", f'"{etag}"')
        for name, value in self._cors_headers():
            self.send_header(name, value)
        self.end_headers()
        self.wfile.write(body)

    def _error(self, status: int, message: str, **extra: Any) -> None:
        self._send(status, {"error": message, **extra})

    def _body_json(self) -> Any:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return None
        return json.loads(raw)

    def _if_match(self) -> int | None:
        value = self.headers.get("If-Match")
        if value is None:
            return None
        stripped = value.strip().strip('"')
        if not stripped.isdigit():
            raise ValueError(f"If-Match must carry a version integer, got {value!r}")
        return int(stripped)

    # --------------------------------------------------------------- routes

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        for name, value in self._cors_headers():
            self.send_header(name, value)
        self.end_headers()

    def do_GET(self) -> None:
        path, _, query = self.path.partition("?")
        params = _parse_query(query)
        if path == "/systems":
            return self._get_index()
        if path == "/queue":
            return self._get_queue()
        if path == "/stats":
            return self._get_stats(params)
        match = re.fullmatch(r"/systems/([^/]+)", path)
        if match:
            return self._get_system(match.group(1))
        match = re.fullmatch(r"/systems/([^/]+)/graph", path)
        if match:
            return self._get_graph(match.group(1))
        self._error(404, f"no route for GET {path}")

    def do_PUT(self) -> None:
        match = re.fullmatch(r"/systems/([^/]+)", self.path.partition("?")[0])
        if not match:
            return self._error(404, f"no route for PUT {self.path}")
        self._put_system(match.group(1))

    def do_POST(self) -> None:
        path = self.path.partition("?")[0]
        if path == "/extract":
            return self._post_extract()
        match = re.fullmatch(r"/systems/([^/]+)/review", path)
        if match:
            return self._post_review(match.group(1))
        self._error(404, f"no route for POST {path}")

    # -------------------------------------------------------------- helpers

    def _get_index(self) -> None:
        store = self.cfg.store
        index = []
        for key in store.keys():
            entry: dict[str, Any] = {"key": key, "title": None, "year": None, "review_status": None}
            found = store.read(key)
            if found:
                bp, _ = parse_blueprint(found[0], "lenient")
                if bp is not None:
                    entry["title"] = bp.paper_title
                    entry["year"] = bp.metadata.year if bp.metadata else None
            record = store.load_record(key)
            if record is not None:
                entry["review_status"] = record.review_status
            index.append(entry)
        self._send(200, index)

    def _get_system(self, key: str) -> None:
        if not _valid_key(key):
            return self._error(404, f"invalid key {key!r}")
        found = self.cfg.store.read(key)
        if found is None:
            return self._error(404, f"unknown system {key!r}")
        raw, version = found
        self._send(200, json.loads(raw.decode("utf-8")), etag=version)

    def _get_graph(self, key: str) -> None:
        if not _valid_key(key):
            return self._error(404, f"invalid key {key!r}")
        found = self.cfg.store.read(key)
        if found is None:
            return self._error(404, f"unknown system {key!r}")
        bp, report = parse_blueprint(found[0], "lenient")
        if bp is None:
            return self._send(422, report.to_wire())
        self._send(200, graph_to_wire(build_graph(bp)))

    def _put_system(self, key: str) -> None:
        if not _valid_key(key):
            return self._error(404, f"invalid key {key!r}")
        store = self.cfg.store
        if store.read_only:
            return self._error(403, "service is read-only")
        try:
            expected = self._if_match()
        except ValueError as exc:
            return self._error(400, str(exc))
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        bp, report = parse_blueprint(raw, store.mode)
        if bp is None:
            return self._send(400, report.to_wire())
        exists = store.version(key) is not None
        if exists and expected is None:
            return self._error(428, "If-Match header required to update an existing system")
        try:
            version = store.write(key, bp, expected if exists else None)
        except VersionConflict as exc:
            return self._error(409, str(exc), current_version=exc.current)
        self._send(200, {"key": key, "version": version}, etag=version)

    def _get_stats(self, params: dict[str, str]) -> None:
        store = self.cfg.store
        metric = params.get("metric", "summary")
        blueprints, failures = corpus_ops.load_corpus(store.root, "lenient")
        if not blueprints:
            return self._error(422, "corpus is empty", failures=[f for f, _ in failures])
        table = self.cfg.synonyms
        try:
            if metric == "summary":
                payload: Any = corpus_ops.summarize(blueprints).to_wire()
            elif metric == "block-freq":
                level = level_from_name(params.get("level", "intermediate"))
                payload = corpus_ops.block_frequencies(blueprints, level, table).to_wire()
            elif metric == "edge-patterns":
                level = level_from_name(params.get("level", "high"))
                exclude = params.get("include_self_loops", "") != "true"
                payload = corpus_ops.edge_pattern_frequencies(
                    blueprints, level, exclude, table
                ).to_wire()
            elif metric == "centrality":
                level = level_from_name(params.get("level", "granular"))
                payload = corpus_ops.centrality_ranking(blueprints, level, table).to_wire()
            elif metric == "trends":
                payload = corpus_ops.temporal_trends(blueprints).to_wire()
            else:
                return self._error(400, f"unknown metric {metric!r}")
        except corpus_ops.NoDatedSystemsError as exc:
            return self._error(422, str(exc))
        except ValueError as exc:
            return self._error(400, str(exc))
        self._send(200, payload)

    def _post_extract(self) -> None:
        cfg = self.cfg
        if cfg.store.read_only:
            return self._error(403, "service is read-only")
        if cfg.transport_cfg is None:
            return self._error(503, "no transport configured (start serve with --transport)")
        try:
            body = self._body_json()
        except json.JSONDecodeError as exc:
            return self._error(400, f"request body is not JSON: {exc}")
        if not isinstance(body, dict) or "key" not in body or "paper_text" not in body:
            return self._error(400, "body must carry 'key' and 'paper_text'")
        key = body["key"]
        if not isinstance(key, str) or not _valid_key(key):
            return self._error(400, f"invalid key {key!r}")
        spec = PromptSpec(paper_text=str(body["paper_text"]))
        max_refinements = int(body.get("max_refinements", cfg.max_refinements))
        try:
            record = run_extraction(
                spec, cfg.transport_cfg, max_refinements=max_refinements, mode=cfg.store.mode
            )
        except ExtractionTransportError as exc:
            cfg.store.save_record(key, exc.record)
            return self._error(502, str(exc))
        except TransportError as exc:
            return self._error(502, str(exc))
        version = cfg.store.store_extraction(key, record)
        self._send(200, {"key": key, "version": version, "record": record.to_wire()})

    def _get_queue(self) -> None:
        store = self.cfg.store
        queue = []
        for key in store.keys():
            record = store.load_record(key)
            if record is not None and record.review_status == REVIEW_DRAFT:
                queue.append(
                    {
                        "key": key,
                        "review_status": record.review_status,
                        "refinement_count": record.refinement_count,
                    }
                )
        self._send(200, queue)

    def _post_review(self, key: str) -> None:
        cfg = self.cfg
        if cfg.store.read_only:
            return self._error(403, "service is read-only")
        if not _valid_key(key):
            return self._error(404, f"invalid key {key!r}")
        record = cfg.store.load_record(key)
        if record is None:
            return self._error(404, f"system {key!r} has no extraction record to review")
        try:
            body = self._body_json() or {}
        except json.JSONDecodeError as exc:
            return self._error(400, f"request body is not JSON: {exc}")
        action = body.get("action")
        instructions = str(body.get("instructions") or "")
        if action == "accept":
            updated = ExtractionRecord(
                blueprint=record.blueprint,
                attempts=record.attempts,
                model_id=record.model_id,
                started_at=record.started_at,
                finished_at=record.finished_at,
                review_status=REVIEW_ACCEPTED,
            )
            cfg.store.save_record(key, updated)
            return self._send(200, {"key": key, "record": updated.to_wire()})
        if action != "needs_revision":
            return self._error(400, "action must be 'accept' or 'needs_revision'")
        if instructions.strip() and cfg.transport_cfg is not None:
            found = cfg.store.read(key)
            previous = found[0].decode("utf-8") if found else serialize_blueprint(
                record.blueprint
            ) if record.blueprint else ""
            try:
                updated = refine_extraction(
                    record,
                    previous,
                    instructions,
                    cfg.transport_cfg,
                    max_refinements=cfg.max_refinements,
                    mode=cfg.store.mode,
                )
            except ExtractionTransportError as exc:
                cfg.store.save_record(key, exc.record)
                return self._error(502, str(exc))
            version = cfg.store.store_extraction(key, updated)
            return self._send(200, {"key": key, "version": version, "record": updated.to_wire()})
        updated = ExtractionRecord(
            blueprint=record.blueprint,
            attempts=record.attempts,
            model_id=record.model_id,
            started_at=record.started_at,
            finished_at=record.finished_at,
            review_status=REVIEW_NEEDS_REVISION,
        )
        cfg.store.save_record(key, updated)
        self._send(200, {"key": key, "record": updated.to_wire()})


def _parse_query(query: str) -> dict[str, str]:
    params: dict[str, str] = {}
    for piece in query.split("&"):
        if "=" in piece:
            name, _, value = piece.partition("=")
            params[name] = value
    return params


def make_server(
    root_dir: str | Path,
    port: int = 8765,
    read_only: bool = False,
    mode: str = "strict",
    synonyms: SynonymTable | None = None,
    transport_cfg: TransportConfig | None = None,
    max_refinements: int = 3,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    """Build (but do not start) the curation service.

    Port 0 picks a free port; the chosen one is on ``server_address``.
    """
    store = BlueprintStore(root_dir, mode=mode, read_only=read_only)
    cfg = ServeConfig(
        store=store,
        synonyms=synonyms or SynonymTable.default(),
        transport_cfg=transport_cfg,
        max_refinements=max_refinements,
    )
    handler = type("BoundHandler", (_Handler,), {"cfg": cfg})
    return ThreadingHTTPServer((host, port), handler)


def serve(
    root_dir: str | Path,
    port: int = 8765,
    read_only: bool = False,
    mode: str = "strict",
    synonyms: SynonymTable | None = None,
    transport_cfg: TransportConfig | None = None,
    max_refinements: int = 3,
) -> None:
    """Run the curation service until interrupted."""
    server = make_server(
        root_dir,
        port,
        read_only=read_only,
        mode=mode,
        synonyms=synonyms,
        transport_cfg=transport_cfg,
        max_refinements=max_refinements,
    )
    host, bound_port = server.server_address[:2]
    print(f"serving {Path(root_dir).resolve()} on http://{host}:{bound_port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
