"""HTTP API over the render pipeline.

Endpoints: GET /api/meta, POST /api/sonify/sequential, POST
/api/sonify/comparative, GET /api/audio/{token}.  Rendering happens
synchronously inside the request; finished WAVs are parked in an
in-memory store with TTL eviction and fetched by token.  Responses are
deterministic for identical request + configuration.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from . import dataset as ds
from .config import AppConfig
from .mapping import SEQUENTIAL_MODES
from .pipeline import (
    ComparativeResult,
    RenderResult,
    SelectionError,
    Workspace,
    load_workspace,
    render_comparative,
    render_sequential,
    request_token,
)


@dataclass
class RenderJob:
    """One finished (or failed) render parked for retrieval.

    Kept as an explicit record so a queue can replace synchronous
    rendering without changing the API surface.
    """

    token: str
    params: dict
    status: str  # "pending" | "done" | "failed"
    wav_bytes: bytes = b""
    error: str = ""
    created_at: float = field(default_factory=time.monotonic)


class AudioStore:
    """Concurrent token -> RenderJob map with TTL eviction."""

    def __init__(self, ttl_s: float):
        self.ttl_s = ttl_s
        self._jobs: dict[str, RenderJob] = {}
        self._lock = threading.Lock()

    def put(self, job: RenderJob) -> None:
        now = time.monotonic()
        with self._lock:
            self._evict(now)
            job.created_at = now
            self._jobs[job.token] = job

    def get(self, token: str) -> RenderJob | None:
        now = time.monotonic()
        with self._lock:
            self._evict(now)
            return self._jobs.get(token)

    def _evict(self, now: float) -> None:
        expired = [t for t, j in self._jobs.items() if now - j.created_at > self.ttl_s]
        for t in expired:
            del self._jobs[t]


def create_app(
    config: AppConfig | None = None,
    workspace: Workspace | None = None,
    static_dir=None,
) -> FastAPI:
    """Build the API app.

    With neither config nor workspace the app starts unloaded and answers
    503 until given one; passing config loads everything eagerly so
    startup fails fast on bad data.
    """
    if workspace is None and config is not None:
        workspace = load_workspace(config)
    ttl = workspace.config.audio_ttl_s if workspace else AppConfig.audio_ttl_s
    store = AudioStore(ttl_s=ttl)

    app = FastAPI(title="crimesonify", version="0.1.0")
    app.state.workspace = workspace
    app.state.store = store

    def ws() -> Workspace:
        if app.state.workspace is None:
            raise HTTPException(status_code=503, detail="dataset not loaded")
        return app.state.workspace

    @app.get("/api/meta")
    def meta() -> dict:
        w = ws()
        return {
            "regions": list(w.dataset.regions),
            "categories": list(w.dataset.categories),
            "years": list(w.dataset.years),
            "config": w.config.as_json_dict(),
        }

    def _store_render(kind: str, payload: dict, render) -> str:
        token = request_token(kind, payload, ws().config)
        try:
            result = render()
        except (ds.UnknownRegion, ds.UnknownCategory, ds.UnknownYear, SelectionError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except Exception as exc:  # pragma: no cover - render failures are exceptional
            store.put(RenderJob(token=token, params=payload, status="failed", error=str(exc)))
            raise HTTPException(status_code=500, detail=f"render failed: {exc}") from exc
        store.put(RenderJob(token=token, params=payload, status="done", wav_bytes=result.wav_bytes))
        return token

    async def _json_body(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception as exc:
            raise HTTPException(status_code=400, detail="request body is not valid JSON") from exc
        if not isinstance(body, dict):
            raise HTTPException(status_code=400, detail="request body must be a JSON object")
        return body

    @app.post("/api/sonify/sequential")
    async def sonify_sequential(request: Request) -> dict:
        body = await _json_body(request)
        region = body.get("region")
        category = body.get("category")
        mode = body.get("mode")
        if not isinstance(region, str) or not isinstance(category, str):
            raise HTTPException(status_code=400, detail="region and category are required strings")
        if mode not in SEQUENTIAL_MODES:
            raise HTTPException(
                status_code=400, detail=f"mode must be one of {list(SEQUENTIAL_MODES)}, got {mode!r}"
            )
        payload = {"region": region, "category": category, "mode": mode}
        holder: dict[str, RenderResult] = {}

        def render() -> RenderResult:
            holder["r"] = render_sequential(ws(), region, category, mode)
            return holder["r"]

        token = _store_render("sequential", payload, render)
        result = holder["r"]
        return {
            "audio_url": f"/api/audio/{token}",
            "graph": [[label, value] for label, value in result.graph],
            "events": [
                {
                    "start_s": ev.start_s,
                    "duration_s": ev.duration_s,
                    "pitch_factor": ev.pitch_factor,
                    "gain": ev.gain,
                    "timbre_band": ev.timbre_band,
                    "pan_azimuth_deg": ev.pan_azimuth_deg,
                }
                for ev in result.plan.events
            ],
        }

    @app.post("/api/sonify/comparative")
    async def sonify_comparative(request: Request) -> dict:
        body = await _json_body(request)
        fixed = body.get("fixed")
        compare = body.get("compare")
        if not isinstance(fixed, dict) or not isinstance(compare, list):
            raise HTTPException(
                status_code=400, detail="fixed must be an object and compare a two-item list"
            )
        payload = {"fixed": fixed, "compare": compare}
        holder: dict[str, ComparativeResult] = {}

        def render() -> ComparativeResult:
            holder["r"] = render_comparative(ws(), fixed, compare)
            return holder["r"]

        token = _store_render("comparative", payload, render)
        result = holder["r"]
        return {
            "audio_url": f"/api/audio/{token}",
            "values": [result.values[0], result.values[1]],
            "louder": result.louder,
        }

    @app.api_route("/api/audio/{token}", methods=["GET", "HEAD"])
    def audio(token: str, request: Request) -> Response:
        job = store.get(token)
        if job is None or job.status != "done" or not job.wav_bytes:
            raise HTTPException(status_code=404, detail="unknown or expired audio token")
        headers = {"content-length": str(len(job.wav_bytes))}
        if request.method == "HEAD":
            return Response(content=b"", media_type="audio/wav", headers=headers)
        return Response(content=job.wav_bytes, media_type="audio/wav")

    @app.exception_handler(ds.DatasetError)
    def dataset_error(_request: Request, exc: ds.DatasetError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="webui")

    return app
