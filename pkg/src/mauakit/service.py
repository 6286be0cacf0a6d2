"""HTTP facade: problem CRUD, evaluation, sensitivity, and what-if.

All request and response bodies are UTF-8 JSON. Semantic failures return
422 with a validation-report body; malformed JSON returns 400; stale
revisions return 409. Evaluation responses reuse the exact export text the
CLI emits, so the two interfaces agree byte-for-byte.
"""

from __future__ import annotations

import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import io as docio
from .aggregation import evaluate_problem, rank_options
from .model import DecisionProblem, Issue, Severity, ValidationError, ValidationReport, validate_problem
from .sensitivity import Overrides, critical_weights, sweep_weight, what_if
from .store import NotFoundError, ProblemStore, RevisionConflictError

DEFAULT_SWEEP_SAMPLES = 101

logger = logging.getLogger("mauakit.service")


class _StderrHandler(logging.Handler):
    """Writes to whatever sys.stderr is at emit time (survives redirection)."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            sys.stderr.write(self.format(record) + "\n")
        except (ValueError, OSError):
            pass  # stderr replaced or closed; request logs are best-effort


class _ApiError(Exception):
    def __init__(self, status: int, body: dict):
        self.status = status
        self.body = body


def _bad_request(message: str) -> _ApiError:
    return _ApiError(400, {"error": message})


def _unprocessable(report: ValidationReport) -> _ApiError:
    return _ApiError(422, docio.report_to_obj(report))


def _issue_report(path: str, message: str) -> ValidationReport:
    return ValidationReport((Issue(Severity.ERROR, path, message),))


async def _read_json(request: Request) -> Any:
    body = await request.body()
    try:
        return json.loads(body)
    except json.JSONDecodeError as exc:
        raise _bad_request(f"malformed JSON: line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _problem_from_obj(data: Any) -> DecisionProblem:
    """Decode and semantically validate a document, mapping failures to 422."""
    try:
        problem = docio.problem_from_data(data)
    except docio.DocumentSchemaError as exc:
        raise _unprocessable(_issue_report(exc.path, str(exc)))
    report = validate_problem(problem)
    if not report.ok:
        raise _unprocessable(report)
    return problem


def _evaluation_response(problem: DecisionProblem) -> Response:
    result = evaluate_problem(problem)
    text = docio.results_to_json(result, rank_options(result))
    return Response(content=text, media_type="application/json")


def _overrides_from_obj(data: Any) -> Overrides:
    if not isinstance(data, dict):
        raise _unprocessable(_issue_report("$", "override body must be an object"))
    unknown = set(data) - {"importances", "values"}
    if unknown:
        raise _unprocessable(_issue_report(f"$.{sorted(unknown)[0]}", "unknown field"))

    def number(value: Any, path: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise _unprocessable(_issue_report(path, "expected a number"))
        return float(value)

    importances = data.get("importances", {})
    values = data.get("values", {})
    if not isinstance(importances, dict) or not isinstance(values, dict):
        raise _unprocessable(_issue_report("$", "'importances' and 'values' must be objects"))
    parsed_importances = {
        name: number(v, f"$.importances.{name}") for name, v in importances.items()}
    parsed_values: dict[str, dict[str, float]] = {}
    for oname, per_attr in values.items():
        if not isinstance(per_attr, dict):
            raise _unprocessable(_issue_report(f"$.values.{oname}", "expected an object"))
        parsed_values[oname] = {
            aname: number(v, f"$.values.{oname}.{aname}") for aname, v in per_attr.items()}
    return Overrides(importances=parsed_importances, values=parsed_values)


def create_app(
    store_root: str | Path,
    cors_origins: Sequence[str] = ("*",),
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service around a writable store directory.

    When ``static_dir`` exists, its contents (the built web UI) are served
    at ``/``; API routes always take precedence.
    """
    store = ProblemStore(store_root)
    app = FastAPI(title="mauakit", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    if not logger.handlers:
        handler = _StderrHandler()
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
        logger.setLevel(logging.INFO)
        logger.propagate = False

    @app.middleware("http")
    async def _log_requests(request: Request, call_next):
        started = time.perf_counter()
        response = await call_next(request)
        logger.info(json.dumps({
            "method": request.method,
            "path": request.url.path,
            "status": response.status_code,
            "duration_ms": round((time.perf_counter() - started) * 1000, 3),
        }))
        return response

    @app.exception_handler(_ApiError)
    async def _api_error(_request: Request, exc: _ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body)

    def _get_stored(problem_id: str):
        try:
            return store.get(problem_id)
        except NotFoundError:
            raise _ApiError(404, {"error": f"no problem with id {problem_id!r}"})

    def _stored_problem(problem_id: str) -> DecisionProblem:
        # stored documents were validated on write; decode without re-checking
        return docio.problem_from_data(_get_stored(problem_id).document)

    # -- CRUD ---------------------------------------------------------------

    @app.post("/api/problems", status_code=201)
    async def create_problem(request: Request):
        problem = _problem_from_obj(await _read_json(request))
        stored = store.create(docio.problem_to_data(problem), problem.name)
        return {"id": stored.id, "revision": stored.revision}

    @app.get("/api/problems")
    async def list_problems():
        return store.list()

    @app.get("/api/problems/{problem_id}")
    async def get_problem(problem_id: str):
        stored = _get_stored(problem_id)
        return {"document": stored.document, "revision": stored.revision}

    @app.put("/api/problems/{problem_id}")
    async def put_problem(problem_id: str, request: Request):
        body = await _read_json(request)
        if not isinstance(body, dict) or "document" not in body or "expected_revision" not in body:
            raise _bad_request("body must be {document, expected_revision}")
        expected = body["expected_revision"]
        if isinstance(expected, bool) or not isinstance(expected, int):
            raise _bad_request("expected_revision must be an integer")
        problem = _problem_from_obj(body["document"])
        _get_stored(problem_id)
        try:
            stored = store.put(problem_id, docio.problem_to_data(problem),
                               problem.name, expected)
        except RevisionConflictError as exc:
            raise _ApiError(409, {"error": "revision conflict",
                                  "current_revision": exc.current})
        return {"revision": stored.revision}

    @app.delete("/api/problems/{problem_id}", status_code=204)
    async def delete_problem(problem_id: str):
        try:
            store.delete(problem_id)
        except NotFoundError:
            raise _ApiError(404, {"error": f"no problem with id {problem_id!r}"})
        return Response(status_code=204)

    # -- analysis -----------------------------------------------------------

    @app.post("/api/problems/{problem_id}/evaluate")
    async def evaluate_stored(problem_id: str):
        return _evaluation_response(_stored_problem(problem_id))

    @app.post("/api/problems/{problem_id}/sensitivity")
    async def sensitivity_stored(problem_id: str, request: Request):
        body = await _read_json(request)
        if not isinstance(body, dict):
            raise _bad_request("body must be {attribute, mode, samples?}")
        problem = _stored_problem(problem_id)
        attribute = body.get("attribute")
        mode = body.get("mode", "critical")
        if not isinstance(attribute, str):
            raise _unprocessable(_issue_report("$.attribute", "attribute name is required"))
        if mode not in ("sweep", "critical"):
            raise _unprocessable(_issue_report("$.mode", "mode must be 'sweep' or 'critical'"))
        try:
            if mode == "critical":
                payload = docio.critical_to_obj(critical_weights(problem, attribute))
            else:
                samples = body.get("samples", DEFAULT_SWEEP_SAMPLES)
                if isinstance(samples, bool) or not isinstance(samples, int):
                    raise _unprocessable(_issue_report("$.samples", "samples must be an integer"))
                payload = docio.sweep_to_obj(
                    attribute, sweep_weight(problem, attribute, samples), problem.display_scale)
        except ValueError as exc:
            raise _unprocessable(_issue_report("$.attribute", str(exc)))
        return Response(content=docio.render_json(payload), media_type="application/json")

    @app.post("/api/problems/{problem_id}/whatif")
    async def whatif_stored(problem_id: str, request: Request):
        overrides = _overrides_from_obj(await _read_json(request))
        problem = _stored_problem(problem_id)
        try:
            delta = what_if(problem, overrides)
        except ValidationError as exc:
            raise _unprocessable(exc.report)
        return Response(content=docio.render_json(docio.whatif_to_obj(delta)),
                        media_type="application/json")

    @app.post("/api/evaluate")
    async def evaluate_stateless(request: Request):
        problem = _problem_from_obj(await _read_json(request))
        return _evaluation_response(problem)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="webapp")

    return app
