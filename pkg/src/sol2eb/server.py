"""HTTP/JSON session service for the animator and the PO dashboard.

Sessions are held in memory behind opaque tokens, expire after idling, and
serialize their mutations (fire/undo/reset) behind a per-session lock.
Value encoding on the wire is identical to the checker report: integers,
booleans, address atom names, sorted arrays for sets, sorted pair arrays
for maps.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .checker import check_all
from .ebeval import Bounds
from .ebtext import parse_project
from .ebtype import TypedProject, typecheck
from .sim import (
    GuardFailed, InitInvariantViolation, NoConstantModel, NothingToUndo,
    SimError, SimSession, UnknownEvent, WdError, decode_value,
)
from .translate import TranslationReport

SESSION_TTL_SECONDS = 30 * 60


@dataclass
class LoadedProject:
    name: str
    typed: TypedProject
    translation: TranslationReport | None = None


def load_project_files(files: list[tuple[str, str]],
                       translation: TranslationReport | None = None) -> LoadedProject:
    typed = typecheck(parse_project(files))
    return LoadedProject(name=typed.project.name, typed=typed, translation=translation)


def load_project_dir(path: str | Path) -> LoadedProject:
    """All .eb files of a directory, plus the translation report if present."""
    path = Path(path)
    eb_files = sorted(path.glob("*.eb"))
    if not eb_files:
        raise FileNotFoundError(f"no .eb files in {path}")
    files = [(f.name, f.read_text(encoding="utf-8")) for f in eb_files]
    translation = None
    reports = sorted(path.glob("*_report.json"))
    if reports:
        import json

        translation = TranslationReport.from_json(
            json.loads(reports[0].read_text(encoding="utf-8")))
    return load_project_files(files, translation)


@dataclass
class _Held:
    session: SimSession
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_used: float = field(default_factory=time.monotonic)


def _parse_bounds(data: dict | None) -> Bounds:
    data = data or {}
    try:
        return Bounds(
            addr_count=int(data.get("addr", 3)),
            int_lo=int(data.get("int_lo", 0)),
            int_hi=int(data.get("int_hi", 4)),
        )
    except (ValueError, TypeError) as exc:
        raise HTTPException(status_code=400, detail=f"bad bounds: {exc}")


def create_app(projects: dict[str, LoadedProject],
               ui_dir: str | Path | None = None,
               session_ttl: float = SESSION_TTL_SECONDS) -> FastAPI:
    app = FastAPI(title="sol2eb animator")
    sessions: dict[str, _Held] = {}
    registry_lock = threading.Lock()

    def purge():
        now = time.monotonic()
        with registry_lock:
            for sid in [s for s, h in sessions.items()
                        if now - h.last_used > session_ttl]:
                del sessions[sid]

    def held(sid: str) -> _Held:
        purge()
        h = sessions.get(sid)
        if h is None:
            raise HTTPException(status_code=404, detail="unknown or expired session")
        h.last_used = time.monotonic()
        return h

    def project_for(body: dict) -> LoadedProject:
        if "files" in body:
            files = [(f"input{i}.eb", text) for i, text in enumerate(body["files"])]
            try:
                return load_project_files(files)
            except Exception as exc:
                raise HTTPException(status_code=400, detail=str(exc))
        name = body.get("project")
        if name is None:
            if len(projects) == 1:
                return next(iter(projects.values()))
            raise HTTPException(status_code=400, detail="missing 'project' or 'files'")
        if name not in projects:
            raise HTTPException(status_code=404, detail=f"unknown project {name}")
        return projects[name]

    @app.get("/api/projects")
    def list_projects():
        return [
            {"name": p.name, "machines": [m.name for m in p.typed.project.machines]}
            for p in projects.values()
        ]

    @app.get("/api/projects/{name}/pos")
    def project_pos(name: str, addr: int = 3, lo: int = 0, hi: int = 4,
                    all: bool = False):
        if name not in projects:
            raise HTTPException(status_code=404, detail=f"unknown project {name}")
        proj = projects[name]
        try:
            bounds = Bounds(addr_count=addr, int_lo=lo, int_hi=hi)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        report = check_all(proj.typed, bounds, include_trivial=all,
                           translation=proj.translation)
        return report.to_json()

    @app.post("/api/sessions")
    def open_session(body: dict):
        proj = project_for(body)
        bounds = _parse_bounds(body.get("bounds"))
        constants = {}
        for name, raw in (body.get("constants") or {}).items():
            ty = proj.typed.const_types.get(name)
            if ty is None:
                raise HTTPException(status_code=400, detail=f"not a constant: {name}")
            try:
                constants[name] = decode_value(raw, ty, bounds)
            except SimError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
        try:
            session = SimSession(proj.typed, machine=body.get("machine"),
                                 constants=constants, bounds=bounds)
        except (NoConstantModel, InitInvariantViolation, SimError, KeyError) as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        sid = uuid.uuid4().hex
        with registry_lock:
            sessions[sid] = _Held(session=session)
        return {"session_id": sid, "project": proj.name,
                "machine": session.machine.name,
                "state": session.step_result().to_json()}

    @app.get("/api/sessions/{sid}/state")
    def session_state(sid: str):
        return held(sid).session.step_result().to_json()

    @app.get("/api/sessions/{sid}/events")
    def session_events(sid: str):
        return [offer.to_json() for offer in held(sid).session.enabled_events()]

    @app.post("/api/sessions/{sid}/fire")
    def session_fire(sid: str, body: dict):
        h = held(sid)
        event = body.get("event")
        if not event:
            raise HTTPException(status_code=400, detail="missing 'event'")
        with h.lock:
            session = h.session
            try:
                ev_params = session.typed.param_types[(session.machine.name, event)]
            except KeyError:
                raise HTTPException(status_code=404, detail=f"no event named {event}")
            params = {}
            for name, raw in (body.get("params") or {}).items():
                if name not in ev_params:
                    raise HTTPException(
                        status_code=400, detail=f"{event} has no parameter {name}")
                try:
                    params[name] = decode_value(raw, ev_params[name], session.bounds)
                except SimError as exc:
                    raise HTTPException(status_code=400, detail=str(exc))
            try:
                return session.fire(event, params).to_json()
            except GuardFailed as exc:
                return JSONResponse(status_code=409, content={"failed_guard": exc.label})
            except WdError as exc:
                return JSONResponse(status_code=409, content={"event_error": exc.site})
            except (UnknownEvent, SimError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/api/sessions/{sid}/undo")
    def session_undo(sid: str):
        h = held(sid)
        with h.lock:
            try:
                return h.session.undo().to_json()
            except NothingToUndo as exc:
                return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.post("/api/sessions/{sid}/reset")
    def session_reset(sid: str):
        h = held(sid)
        with h.lock:
            return h.session.reset().to_json()

    @app.get("/api/sessions/{sid}/trace")
    def session_trace(sid: str):
        return held(sid).session.export_trace()

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
