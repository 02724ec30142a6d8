"""HTTP session service exposing the interactive audit loop.

Sessions are in-memory; every config mutation bumps a revision counter,
and clients may send If-Revision to detect concurrent edits (409 on
mismatch). All GETs are side-effect free.
"""

from __future__ import annotations

import uuid
from typing import Optional

from fastapi import FastAPI, Header, HTTPException, Response
from pydantic import BaseModel, Field

from .data import (
    apply_discretization,
    attach_predictions,
    attribute_histograms,
    discretize_all,
    load_dataset,
)
from .discrimination import AnalysisConfig
from .errors import AuditError, NoResolvingAttributes, UnknownItemset, UnknownModel
from .exporters import (
    comparison_as_json,
    config_as_json,
    plan_as_json,
    predictions_as_csv,
    report_as_json,
    result_as_json,
)
from .ripples import geometry_as_json, outline_set
from .session import AuditEngine

app = FastAPI(title="fairmine", version="0.1.0")

_sessions: dict[str, AuditEngine] = {}

MAX_UPLOAD_BYTES = 100 * 1024 * 1024


class CreateSession(BaseModel):
    csv: str
    schema_: dict = Field(alias="schema")
    predictions: dict[str, list] = {}
    tau: float = 0.25
    min_support: Optional[int] = None
    max_length: int = 6
    min_group_support: int = 5
    proxies: list[str] = []
    resolving: Optional[list[str]] = None
    allow_empty_resolving: bool = False

    model_config = {"populate_by_name": True}


class ConfigPatch(BaseModel):
    tau: Optional[float] = None
    resolving: Optional[list[str]] = None
    proxies: Optional[list[str]] = None
    protected_group: Optional[str] = None
    min_group_support: Optional[int] = None
    allow_empty_resolving: Optional[bool] = None


class MitigateRequest(BaseModel):
    model: str
    selected: list[str]
    tau_target: float
    preview: bool = True


def _engine(session_id: str) -> AuditEngine:
    engine = _sessions.get(session_id)
    if engine is None:
        raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
    return engine


def _check_revision(engine: AuditEngine, if_revision: Optional[int]) -> None:
    if if_revision is not None and if_revision != engine.revision:
        raise HTTPException(
            status_code=409,
            detail=f"revision conflict: session is at {engine.revision}, "
                   f"request expected {if_revision}")


def _info(session_id: str, engine: AuditEngine) -> dict:
    return {
        "session_id": session_id,
        "revision": engine.revision,
        "config": config_as_json(engine.config),
        "models": engine.models,
        "suggested_resolving": engine.suggestion.ordered if engine.suggestion else None,
        "min_support": engine.min_support,
        "allow_empty_resolving": engine.allow_empty_resolving,
    }


@app.post("/sessions", status_code=201)
def create_session(body: CreateSession) -> dict:
    if len(body.csv.encode("utf-8", errors="ignore")) > MAX_UPLOAD_BYTES:
        raise HTTPException(status_code=422,
                            detail=f"dataset exceeds the {MAX_UPLOAD_BYTES} byte cap")
    try:
        dataset = load_dataset(body.csv, body.schema_)
        ddata = apply_discretization(dataset, discretize_all(dataset))
        for model_id, labels in body.predictions.items():
            ddata = attach_predictions(ddata, model_id, labels)
        config = AnalysisConfig(
            protected=dataset.protected_spec.name,
            protected_group_value=dataset.protected_spec.positive_value,
            tau=body.tau,
            proxies=frozenset(body.proxies),
            min_group_support=body.min_group_support)
        engine = AuditEngine(
            ddata, config,
            min_support=body.min_support, max_length=body.max_length,
            allow_empty_resolving=body.allow_empty_resolving,
            resolving_override=(frozenset(body.resolving)
                                if body.resolving is not None else None))
    except (AuditError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    session_id = uuid.uuid4().hex
    _sessions[session_id] = engine
    return _info(session_id, engine)


@app.get("/sessions/{session_id}")
def get_session(session_id: str) -> dict:
    return _info(session_id, _engine(session_id))


@app.patch("/sessions/{session_id}/config")
def patch_config(session_id: str, body: ConfigPatch,
                 if_revision: Optional[int] = Header(default=None)) -> dict:
    engine = _engine(session_id)
    _check_revision(engine, if_revision)
    changes = {k: v for k, v in body.model_dump().items() if v is not None}
    if not changes:
        raise HTTPException(status_code=422, detail="no config changes supplied")
    try:
        revision = engine.update_config(**changes)
        summary = {}
        for model_id in engine.models:
            result = engine.result(model_id)
            summary[model_id] = {
                "n_itemsets": len(result.itemsets),
                "n_collections": len(result.collections),
            }
    except (NoResolvingAttributes, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except AuditError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return {"revision": revision, "summary": summary}


@app.get("/sessions/{session_id}/results/{model_id}")
def get_results(session_id: str, model_id: str) -> dict:
    engine = _engine(session_id)
    try:
        result = engine.result(model_id)
    except UnknownModel as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    except (NoResolvingAttributes, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    payload = result_as_json(result)
    payload["revision"] = engine.revision
    return payload


@app.get("/sessions/{session_id}/geometry/{model_id}/{collection_index}")
def get_geometry(session_id: str, model_id: str, collection_index: int,
                 dot_budget: Optional[int] = None,
                 outline: Optional[int] = None) -> dict:
    engine = _engine(session_id)
    try:
        geometry = engine.geometry(model_id, collection_index, dot_budget)
        payload = geometry_as_json(geometry)
        if outline is not None:
            loops = outline_set(geometry, outline)
            payload["outlines"] = [[[x, y] for x, y in loop] for loop in loops]
    except UnknownModel as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    except IndexError as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    except (NoResolvingAttributes, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    payload["revision"] = engine.revision
    return payload


@app.get("/sessions/{session_id}/histograms/{model_id}")
def get_histograms(session_id: str, model_id: str) -> dict:
    engine = _engine(session_id)
    try:
        hist = attribute_histograms(engine.ddata, model_id)
    except UnknownModel as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    attributes = []
    for spec in engine.ddata.attributes:
        if spec.role == "outcome":
            continue
        attributes.append({
            "name": spec.name,
            "kind": spec.kind,
            "role": spec.role,
            "resolving": spec.name in engine.config.resolving,
            "bins": [{"category": cat, "beneficial": b, "non_beneficial": nb}
                     for cat, b, nb in hist[spec.name]],
        })
    return {"attributes": attributes, "revision": engine.revision}


@app.get("/sessions/{session_id}/predictions/{model_id}")
def get_predictions_csv(session_id: str, model_id: str) -> Response:
    engine = _engine(session_id)
    try:
        labels = engine.ddata.prediction(model_id)
    except UnknownModel as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    return Response(content=predictions_as_csv(labels), media_type="text/csv")


@app.get("/sessions/{session_id}/compare")
def get_compare(session_id: str, m1: str, m2: str) -> dict:
    engine = _engine(session_id)
    try:
        cmp = engine.compare(m1, m2)
    except UnknownModel as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    except (NoResolvingAttributes, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    payload = comparison_as_json(cmp)
    payload["revision"] = engine.revision
    return payload


@app.post("/sessions/{session_id}/mitigate")
def post_mitigate(session_id: str, body: MitigateRequest,
                  if_revision: Optional[int] = Header(default=None)) -> dict:
    engine = _engine(session_id)
    _check_revision(engine, if_revision)
    try:
        plan, report, new_model_id = engine.mitigate(
            body.model, body.selected, body.tau_target, preview=body.preview)
    except UnknownModel as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    except (UnknownItemset, AuditError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return {
        "plan": plan_as_json(plan),
        "report": report_as_json(report),
        "new_model_id": new_model_id,
        "revision": engine.revision,
    }
