"""REST facade over the engine, powering the scenario designer.

One scenario per process. Readers (GET /config, POST /infer, GET /graph)
work against an immutable snapshot; PUT /config parses, validates, and
compiles a replacement, then swaps the snapshot atomically, so no request
ever observes a half-applied configuration. Errors are JSON objects of the
shape {code, message, path?}.
"""

import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .config import (
    ConfigValidationError,
    ConfigError,
    ScenarioConfig,
    Violation,
    parse_config,
    serialize_config,
)
from .inference import EvidenceError, evidence_from_json, infer
from .network import CompiledNetwork, compile_network

YAML_MEDIA_TYPE = "application/yaml"


@dataclass(frozen=True)
class Snapshot:
    """The active scenario: canonical document plus its compiled network."""

    document: str
    config: ScenarioConfig
    network: CompiledNetwork


class ScenarioStore:
    """Single-writer store whose snapshot readers grab in one atomic read."""

    def __init__(self, path: Path | None = None, write_back: bool = False):
        self._path = path
        self._write_back = write_back
        self._lock = threading.Lock()
        self._snapshot: Snapshot | None = None

    @property
    def snapshot(self) -> Snapshot | None:
        return self._snapshot

    def replace(self, document: str) -> list[Violation]:
        """Validate and apply a new document; on violations nothing changes.

        Returns the violation list (empty means applied). Syntax and schema
        errors raise ConfigError subclasses and also leave the store intact.
        """
        try:
            config = parse_config(document)
        except ConfigValidationError as exc:
            return list(exc.violations)
        snapshot = Snapshot(
            document=serialize_config(config),
            config=config,
            network=compile_network(config),
        )
        with self._lock:
            self._snapshot = snapshot
            if self._write_back and self._path is not None:
                self._path.write_text(snapshot.document, encoding="utf-8")
        return []


def build_graph_view(config: ScenarioConfig) -> dict:
    """Nodes and edges of the two-layer network for the live diagram.

    Exactly one edge per (context, intention) pair; its payload lists the
    influence values for the context's instantiations in declaration order.
    """
    return {
        "contexts": [
            {
                "name": c.name,
                "instantiations": list(c.instantiations),
                "priors": {inst: c.priors[inst] for inst in c.instantiations},
            }
            for c in config.contexts
        ],
        "intentions": [{"name": m.name} for m in config.intentions],
        "edges": [
            {
                "context": c.name,
                "intention": m.name,
                "values": [m.influences[c.name][inst] for inst in c.instantiations],
            }
            for c in config.contexts
            for m in config.intentions
        ],
        "combined_edges": [
            {"intention": e.intention, "conditions": dict(e.conditions), "value": e.value}
            for e in config.combined
        ],
        "decision_threshold": config.decision_threshold,
    }


def _error(status: int, code: str, message: str, path: str | None = None) -> JSONResponse:
    body: dict = {"code": code, "message": message}
    if path is not None:
        body["path"] = path
    return JSONResponse(body, status_code=status)


def _no_config() -> JSONResponse:
    return _error(404, "NO_CONFIG", "no scenario configuration is loaded")


def create_app(
    config_path: str | Path | None = None,
    config_text: str | None = None,
    write_back: bool = False,
) -> FastAPI:
    """Build the service app, optionally preloading a scenario.

    An invalid initial scenario fails fast with the underlying ConfigError.
    """
    path = Path(config_path) if config_path is not None else None
    store = ScenarioStore(path=path, write_back=write_back)
    if config_text is None and path is not None:
        config_text = path.read_text(encoding="utf-8")
    if config_text is not None:
        violations = store.replace(config_text)
        if violations:
            raise ConfigValidationError(violations)

    app = FastAPI(title="intentrec service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )
    app.state.store = store

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "config_loaded": store.snapshot is not None}

    @app.get("/config")
    def get_config():
        snapshot = store.snapshot
        if snapshot is None:
            return _no_config()
        return Response(snapshot.document, media_type=YAML_MEDIA_TYPE)

    @app.put("/config")
    async def put_config(request: Request):
        try:
            document = (await request.body()).decode("utf-8")
        except UnicodeDecodeError as exc:
            return _error(400, "INVALID_DOCUMENT", f"body is not UTF-8: {exc}")
        try:
            violations = store.replace(document)
        except ConfigError as exc:
            return _error(400, "INVALID_DOCUMENT", str(exc),
                          path=getattr(exc, "path", None))
        if violations:
            return JSONResponse(
                {"applied": False, "violations": [v.to_json() for v in violations]},
                status_code=422,
            )
        return {"applied": True, "violations": []}

    @app.post("/validate")
    async def validate_draft(request: Request):
        try:
            document = (await request.body()).decode("utf-8")
        except UnicodeDecodeError as exc:
            return _error(400, "INVALID_DOCUMENT", f"body is not UTF-8: {exc}")
        try:
            parse_config(document)
        except ConfigValidationError as exc:
            return {"violations": [v.to_json() for v in exc.violations]}
        except ConfigError as exc:
            return _error(400, "INVALID_DOCUMENT", str(exc),
                          path=getattr(exc, "path", None))
        return {"violations": []}

    @app.post("/infer")
    def infer_route(evidence: dict):
        snapshot = store.snapshot
        if snapshot is None:
            return _no_config()
        try:
            result = infer(snapshot.network, evidence_from_json(evidence))
        except EvidenceError as exc:
            return _error(400, "EVIDENCE_ERROR", str(exc))
        return result.to_json()

    @app.get("/graph")
    def graph():
        snapshot = store.snapshot
        if snapshot is None:
            return _no_config()
        return build_graph_view(snapshot.config)

    return app
