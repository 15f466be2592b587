"""HTTP service wrapping the summary pipeline for the explorer UI.

Charts register into an in-memory session (selected by the X-Session-Id
header, "default" otherwise); every summary endpoint echoes the seed it
used so "random" template variation stays replayable. Sessions do not
survive restarts. One structured log line is emitted per request.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, Header, Request, Response
from fastapi.responses import JSONResponse

from . import deconstruct, pipeline, query, realizer
from .deconstruct import DeconstructionError
from .model import ChartParseError, ChartSpec, from_dict, to_dict
from .planner import LengthLevel
from .query import EmptySelection, InvalidSelection, Selection

logger = logging.getLogger("seechart.service")

SESSION_HEADER = "X-Session-Id"


@dataclass
class SessionState:
    session_id: str
    charts: dict[str, ChartSpec] = field(default_factory=dict)
    seeds: dict[str, int] = field(default_factory=dict)
    level: LengthLevel = LengthLevel.MODERATE
    selection: Selection | None = None
    counter: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def register(self, spec: ChartSpec, seed: int | None) -> tuple[str, int]:
        with self.lock:
            self.counter += 1
            chart_id = f"c{self.counter}"
            self.charts[chart_id] = spec
            self.seeds[chart_id] = seed if seed is not None else random.getrandbits(32)
            return chart_id, self.seeds[chart_id]


class _Sessions:
    def __init__(self):
        self._lock = threading.Lock()
        self._by_id: dict[str, SessionState] = {}

    def get(self, session_id: str) -> SessionState:
        with self._lock:
            if session_id not in self._by_id:
                self._by_id[session_id] = SessionState(session_id)
            return self._by_id[session_id]


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        self.message = message
        super().__init__(message)


def _chart_hash(spec: ChartSpec) -> str:
    return hashlib.sha1(json.dumps(to_dict(spec), sort_keys=True).encode()).hexdigest()[:12]


def _parse_level(raw: str | None, default: LengthLevel) -> LengthLevel:
    if raw is None:
        return default
    try:
        return LengthLevel(raw)
    except ValueError:
        raise ApiError(400, f"unknown length level {raw!r}") from None


def _chart_from_body(body: dict, key: str = "chart") -> ChartSpec:
    if key not in body:
        raise ApiError(400, f"request body needs a {key!r} field")
    try:
        return from_dict(body[key])
    except ChartParseError as e:
        raise ApiError(400, str(e)) from None


def _selection_from_body(body: dict, spec: ChartSpec) -> Selection:
    indices = body.get("indices")
    if not isinstance(indices, list) or not all(isinstance(i, int) for i in indices):
        raise ApiError(400, "selection needs an integer array under 'indices'")
    series = body.get("series")
    if series is not None:
        sel = Selection.single_series(int(series), indices)
    else:
        sel = Selection.cross_series(indices, len(spec.series))
    try:
        query.validate_selection(spec, sel)
    except EmptySelection as e:
        raise ApiError(422, str(e)) from None
    except InvalidSelection as e:
        raise ApiError(422, str(e)) from None
    return sel


def create_app() -> FastAPI:
    app = FastAPI(title="seechart", docs_url=None, redoc_url=None)
    sessions = _Sessions()

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"error": exc.message})

    @app.middleware("http")
    async def _log_requests(request: Request, call_next):
        start = time.perf_counter()
        response: Response = await call_next(request)
        elapsed_ms = (time.perf_counter() - start) * 1000
        logger.info(
            "session=%s op=%s status=%d latency_ms=%.1f",
            request.headers.get(SESSION_HEADER, "default"),
            f"{request.method} {request.url.path}",
            response.status_code,
            elapsed_ms,
        )
        return response

    def _session(session_id: str | None) -> SessionState:
        return sessions.get(session_id or "default")

    def _get_chart(state: SessionState, chart_id: str) -> ChartSpec:
        try:
            return state.charts[chart_id]
        except KeyError:
            raise ApiError(404, f"unknown chart {chart_id!r}") from None

    async def _json_body(request: Request) -> dict:
        try:
            body = await request.json()
        except json.JSONDecodeError:
            raise ApiError(400, "request body is not valid JSON") from None
        if not isinstance(body, dict):
            raise ApiError(400, "request body must be a JSON object")
        return body

    @app.get("/v1/health")
    async def health():
        return {"status": "ok"}

    @app.post("/v1/deconstruct")
    async def deconstruct_endpoint(request: Request):
        content_type = request.headers.get("content-type", "")
        warnings: list[str] = []
        try:
            if "json" in content_type:
                body = await _json_body(request)
                if "svg" in body:
                    spec = deconstruct.deconstruct_svg(body["svg"], warnings)
                elif "vegalite" in body:
                    spec = deconstruct.ingest_vegalite(body["vegalite"])
                else:
                    raise ApiError(400, "body needs 'svg' text or a 'vegalite' spec")
            else:
                raw = (await request.body()).decode("utf-8", errors="replace")
                spec = deconstruct.deconstruct_svg(raw, warnings)
        except DeconstructionError as e:
            raise ApiError(422, f"{type(e).__name__}: {e}") from None
        return {"chart": to_dict(spec), "warnings": warnings}

    @app.post("/v1/charts")
    async def register_chart(request: Request, session: str | None = Header(default=None, alias=SESSION_HEADER)):
        body = await _json_body(request)
        spec = _chart_from_body(body)
        state = _session(session)
        chart_id, seed = state.register(spec, body.get("seed"))
        return {"id": chart_id, "seed": seed, "hash": _chart_hash(spec)}

    @app.get("/v1/charts/{chart_id}/title")
    async def chart_title(chart_id: str, session: str | None = Header(default=None, alias=SESSION_HEADER)):
        state = _session(session)
        spec = _get_chart(state, chart_id)
        return {"text": realizer.realize_title(spec)}

    @app.get("/v1/charts/{chart_id}/summary")
    async def chart_summary(
        chart_id: str,
        level: str | None = None,
        seed: int | None = None,
        session: str | None = Header(default=None, alias=SESSION_HEADER),
    ):
        state = _session(session)
        spec = _get_chart(state, chart_id)
        length = _parse_level(level, state.level)
        use_seed = seed if seed is not None else state.seeds[chart_id]
        summary = pipeline.summarize(spec, length, use_seed)
        return {"level": length.value, "seed": use_seed, "sentences": list(summary.sentences), "text": summary.text}

    @app.get("/v1/charts/{chart_id}/point")
    async def chart_point(
        chart_id: str,
        series: int = 0,
        index: int = 0,
        session: str | None = Header(default=None, alias=SESSION_HEADER),
    ):
        state = _session(session)
        spec = _get_chart(state, chart_id)
        try:
            text = realizer.realize_point(spec, series, index)
        except realizer.IndexOutOfBounds as e:
            raise ApiError(422, str(e)) from None
        point = spec.series[series].points[index]
        return {
            "text": text,
            "series": series,
            "index": index,
            "category": point.category,
            "value": point.value,
            "series_name": spec.series[series].name,
        }

    @app.post("/v1/charts/{chart_id}/selection/summarize")
    async def selection_summarize(
        chart_id: str, request: Request, session: str | None = Header(default=None, alias=SESSION_HEADER)
    ):
        state = _session(session)
        spec = _get_chart(state, chart_id)
        body = await _json_body(request)
        sel = _selection_from_body(body, spec)
        with state.lock:
            state.selection = sel
        length = _parse_level(body.get("level"), state.level)
        seed = body.get("seed", state.seeds[chart_id])
        summary = pipeline.summarize_selection(spec, sel, length, seed)
        return {
            "level": length.value,
            "seed": seed,
            "sentences": list(summary.sentences),
            "text": summary.text,
            "selection": {"indices": list(sel.indices_by_series[0][1])},
        }

    @app.post("/v1/charts/{chart_id}/selection/describe")
    async def selection_describe(
        chart_id: str, request: Request, session: str | None = Header(default=None, alias=SESSION_HEADER)
    ):
        state = _session(session)
        spec = _get_chart(state, chart_id)
        body = await _json_body(request)
        sel = _selection_from_body(body, spec)
        return {"text": query.describe_selection(sel, spec)}

    @app.post("/v1/charts/{chart_id}/answer")
    async def chart_answer(
        chart_id: str, request: Request, session: str | None = Header(default=None, alias=SESSION_HEADER)
    ):
        state = _session(session)
        spec = _get_chart(state, chart_id)
        body = await _json_body(request)
        raw = body.get("query")
        if not isinstance(raw, str):
            raise ApiError(400, "body needs a 'query' string")
        parsed = query.parse_query(raw, spec)
        result = query.answer(spec, parsed)
        return {"intent": parsed.intent.value, "spoken_text": result.spoken_text, "payload": result.payload}

    @app.post("/v1/summarize")
    async def summarize_stateless(request: Request):
        body = await _json_body(request)
        spec = _chart_from_body(body)
        length = _parse_level(body.get("level"), LengthLevel.MODERATE)
        seed = body.get("seed")
        if seed is None:
            seed = random.getrandbits(32)
        summary = pipeline.summarize(spec, length, seed)
        return {"level": length.value, "seed": seed, "sentences": list(summary.sentences), "text": summary.text}

    @app.post("/v1/selection/summarize")
    async def selection_summarize_stateless(request: Request):
        body = await _json_body(request)
        spec = _chart_from_body(body)
        sel = _selection_from_body(body, spec)
        length = _parse_level(body.get("level"), LengthLevel.MODERATE)
        seed = body.get("seed", 0)
        summary = pipeline.summarize_selection(spec, sel, length, seed)
        return {"level": length.value, "seed": seed, "sentences": list(summary.sentences), "text": summary.text}

    return app


app = create_app()
