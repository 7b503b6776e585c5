"""HTTP interface.

All responses are canonical JSON (sorted keys, compact, UTF-8) so that a
snapshot fetched here is byte-identical to the same snapshot printed by
the CLI.  Errors use {"code", "message"} with the code taken from the
exception class: 400 for malformed input, 404 for unknown ids or columns,
422 for requests that are well-formed but domain-invalid.

Sessions persist as event logs under the data root; a server restarted on
the same root replays the log on first access and serves the same bytes.
"""
from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from .dataset import column_distribution
from .errors import (
    EmptyComplement,
    EmptyIncluded,
    EmptySample,
    EmptySubset,
    ExplorerError,
    NoUsableFeatures,
    NotInStack,
    OutcomeConstraint,
    TooFewRows,
    UnknownColumn,
    UnknownDataset,
    UnknownSession,
)
from .filters import constraint_from_jsonable
from .jsonutil import canonical_bytes
from .partition import SimilarityConfig
from .session import Mode, Session
from .storage import DataStore


class MalformedJson(ExplorerError):
    """Request body is not valid JSON of the expected shape."""


_NOT_FOUND = (UnknownColumn, UnknownDataset, UnknownSession)
_DOMAIN = (
    EmptyIncluded,
    EmptyComplement,
    EmptySubset,
    EmptySample,
    TooFewRows,
    NoUsableFeatures,
    NotInStack,
    OutcomeConstraint,
)


def _status_for(exc: ExplorerError) -> int:
    if isinstance(exc, _NOT_FOUND):
        return 404
    if isinstance(exc, _DOMAIN):
        return 422
    return 400


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_bytes(payload),
        status_code=status_code,
        media_type="application/json",
    )


async def _json_body(request: Request) -> dict:
    raw = await request.body()
    try:
        body = json.loads(raw) if raw else {}
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"request body is not valid JSON: {exc}") from None
    if not isinstance(body, dict):
        raise MalformedJson("request body must be a JSON object")
    return body


def create_app(data_root=None, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="filterlens", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = DataStore(data_root)
    sessions: dict[str, Session] = {}

    @app.exception_handler(ExplorerError)
    async def _explorer_error(_request: Request, exc: ExplorerError) -> Response:
        return _json_response(
            {"code": exc.code, "message": str(exc)}, status_code=_status_for(exc)
        )

    def _get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            log = store.load_session_log(session_id)
            ds = store.load_dataset(log["dataset"])
            session = Session.from_log(ds, log, session_id=session_id)
            sessions[session_id] = session
        return session

    def _persist(session: Session) -> None:
        store.save_session_log(session.session_id, session.to_log())

    @app.get("/healthz")
    async def healthz() -> Response:
        return _json_response({"status": "ok"})

    @app.post("/datasets")
    async def upload_dataset(request: Request) -> Response:
        params = request.query_params
        manifest = store.save_dataset(
            await request.body(),
            name=params.get("name", "dataset"),
            numeric=tuple(params.getlist("numeric")),
            categorical=tuple(params.getlist("categorical")),
        )
        return _json_response(manifest, status_code=201)

    @app.get("/datasets")
    async def list_datasets() -> Response:
        return _json_response(store.list_datasets())

    @app.get("/datasets/{ds_id}")
    async def dataset_manifest(ds_id: str) -> Response:
        return _json_response(store.manifest(ds_id))

    @app.get("/datasets/{ds_id}/columns/{column}")
    async def column_summary(ds_id: str, column: str) -> Response:
        ds = store.load_dataset(ds_id)
        col = ds.column(column)
        payload = {
            "name": col.name,
            "kind": col.kind.value,
            "categories": list(col.categories) if col.kind.is_categorical else None,
            "distribution": column_distribution(ds, column).to_jsonable(),
        }
        return _json_response(payload)

    @app.post("/sessions")
    async def create_session(request: Request) -> Response:
        body = await _json_body(request)
        for field in ("dataset", "outcome"):
            if field not in body:
                raise MalformedJson(f"missing field {field!r}")
        ds = store.load_dataset(body["dataset"])
        raw_cfg = body.get("config") or {}
        if not isinstance(raw_cfg, dict):
            raise MalformedJson("config must be a JSON object")
        features = raw_cfg.get("features")
        config = SimilarityConfig(
            features=tuple(features) if features is not None else None,
            cf_fraction=raw_cfg.get("cf_fraction", 0.5),
            in_sample_cap=raw_cfg.get("in_sample_cap", 1000),
            seed=raw_cfg.get("seed", 0),
        )
        session = Session(
            ds,
            body["outcome"],
            mode=body.get("mode", Mode.COUNTERFACTUAL),
            config=config,
            dataset_ref=body["dataset"],
        )
        sessions[session.session_id] = session
        _persist(session)
        return _json_response(
            {"id": session.session_id, "snapshot": session.snapshot().to_jsonable()},
            status_code=201,
        )

    @app.get("/sessions/{session_id}")
    async def get_snapshot(session_id: str, feature: str | None = None) -> Response:
        session = _get_session(session_id)
        return _json_response(session.snapshot(selected_feature=feature).to_jsonable())

    @app.get("/sessions/{session_id}/log")
    async def get_log(session_id: str) -> Response:
        session = _get_session(session_id)
        return _json_response(session.to_log(session.dataset_ref))

    @app.post("/sessions/{session_id}/filters")
    async def push_filter(session_id: str, request: Request) -> Response:
        session = _get_session(session_id)
        body = await _json_body(request)
        snap = session.push_filter(constraint_from_jsonable(body))
        _persist(session)
        return _json_response(snap.to_jsonable())

    @app.delete("/sessions/{session_id}/filters/{column}")
    async def pop_filter(session_id: str, column: str) -> Response:
        session = _get_session(session_id)
        snap = session.pop_filter(column)
        _persist(session)
        return _json_response(snap.to_jsonable())

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
