"""WebSocket endpoint wrapping a steering Session per connection.

While a session is running, the server advances one step per loop turn and
awaits delivery of each event before stepping again, so a slow consumer
naturally paces the simulation (no unbounded buffering).
"""

from __future__ import annotations

import asyncio
import json
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from .service import Session


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="hexmorph steering service")

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        session = Session()
        try:
            while True:
                if session.running:
                    try:
                        raw = await asyncio.wait_for(ws.receive_text(), timeout=0.0001)
                    except asyncio.TimeoutError:
                        for event in session.step_once():
                            await ws.send_text(json.dumps(event))
                        continue
                else:
                    raw = await ws.receive_text()
                try:
                    cmd = json.loads(raw)
                except json.JSONDecodeError as exc:
                    await ws.send_text(json.dumps(
                        {"event": "error", "id": None, "reason": f"bad JSON: {exc}"}))
                    continue
                for event in session.handle_command(cmd):
                    await ws.send_text(json.dumps(event))
        except WebSocketDisconnect:
            pass

    @app.get("/healthz")
    def healthz():
        return {"ok": True}

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def serve(port: int = 7788, bind: str = "127.0.0.1",
          static_dir: str | None = None) -> None:
    import uvicorn
    uvicorn.run(create_app(static_dir), host=bind, port=port, log_level="info")
