"""HTTP surface of the play service (FastAPI)."""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .service import (
    ServiceError,
    SessionStore,
    advance_ai,
    apply_move,
    create_session,
    hint,
    session_view,
)


def build_app(store: SessionStore | None = None) -> FastAPI:
    snapshot_dir = os.environ.get("GEO_SNAPSHOT_DIR") or None
    store = store or SessionStore(snapshot_dir)
    app = FastAPI(title="geogrundy", version="0.1.0")

    cors_origin = os.environ.get("GEO_CORS_ORIGIN")
    if cors_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ServiceError)
    async def service_error_handler(_request, exc: ServiceError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.status, "message": exc.message}},
        )

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/games", status_code=201)
    async def post_game(request: Request):
        try:
            payload = await request.json()
        except Exception:
            raise ServiceError(400, "request body is not valid JSON") from None
        session = create_session(store, payload)
        # An AI opening (AI configured as player 0) is played immediately.
        advance_ai(store, session.id)
        return session_view(store.get(session.id))

    @app.get("/api/games/{session_id}")
    def get_game(session_id: str):
        return session_view(store.get(session_id))

    @app.post("/api/games/{session_id}/moves")
    async def post_move(session_id: str, request: Request):
        try:
            payload = await request.json()
        except Exception:
            raise ServiceError(400, "request body is not valid JSON") from None
        if not isinstance(payload, dict):
            raise ServiceError(400, "move request must be a JSON object")
        move = payload.get("move", payload)
        return apply_move(store, session_id, move)

    @app.get("/api/games/{session_id}/hint")
    def get_hint(session_id: str):
        return hint(store, session_id)

    ui_dir = os.environ.get("GEO_UI_DIR")
    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
