"""HTTP service for UI clients; JSON in, JSON out, under the /v1 prefix.

All handlers are stateless wrappers over the same parsers and evaluators
the CLI uses, so the two surfaces cannot disagree.  Errors come back as a
ServiceError body: a ``code``, a human-readable ``message``, and, when a
specific field is to blame, a ``detail`` payload naming it.  Unexpected
failures surface as code ``Internal`` with no internals attached.
"""

from __future__ import annotations

import enum
from typing import Any, Callable

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .assessment import CURRENT_SCHEMA_VERSION, evaluate
from .core import convert_value
from .documents import (
    impacts_to_dict,
    parse_assessment_document,
    parse_convert_request,
    parse_power_request,
    parse_sweep_spec,
    power_estimate_to_dict,
    report_to_dict,
    sweep_result_to_dict,
)
from .errors import DocumentError, EvidenceError, UnreachableTargetError
from .power import simulate_two_group_power, two_proportion_power
from .sensitivity import adjustment_impacts, sweep


class ErrorCode(enum.Enum):
    BAD_REQUEST = "BadRequest"
    VALIDATION_FAILED = "ValidationFailed"
    UNREACHABLE = "Unreachable"
    INTERNAL = "Internal"


def _error(
    status: int, code: ErrorCode, message: str, field: str | None = None
) -> JSONResponse:
    body: dict[str, Any] = {"code": code.value, "message": message}
    if field is not None:
        body["detail"] = {"field": field}
    return JSONResponse(body, status_code=status)


async def _dispatch(
    request: Request, handle: Callable[[Any], dict[str, Any]]
) -> JSONResponse:
    try:
        payload = await request.json()
    except Exception:
        return _error(400, ErrorCode.BAD_REQUEST, "request body is not valid JSON")
    try:
        return JSONResponse(handle(payload))
    except DocumentError as exc:
        return _error(400, ErrorCode.VALIDATION_FAILED, str(exc), field=exc.field)
    except UnreachableTargetError as exc:
        return _error(422, ErrorCode.UNREACHABLE, str(exc))
    except EvidenceError as exc:
        return _error(422, ErrorCode.VALIDATION_FAILED, str(exc))
    except Exception:
        return _error(500, ErrorCode.INTERNAL, "internal error")


def _handle_evaluate(payload: Any) -> dict[str, Any]:
    document = parse_assessment_document(payload)
    report = evaluate(document.assessment)
    return report_to_dict(report, document.assessment)


def _handle_sweep(payload: Any) -> dict[str, Any]:
    spec = parse_sweep_spec(payload)
    return sweep_result_to_dict(sweep(spec))


def _handle_power(payload: Any) -> dict[str, Any]:
    req = parse_power_request(payload)
    if req.simulate:
        estimate = simulate_two_group_power(
            req.design, iterations=req.iterations, seed=req.seed
        )
    else:
        estimate = two_proportion_power(req.design)
    return power_estimate_to_dict(estimate)


def _handle_convert(payload: Any) -> dict[str, Any]:
    req = parse_convert_request(payload)
    return {
        "schema_version": CURRENT_SCHEMA_VERSION,
        "kind": "conversion",
        "from": req.from_unit,
        "to": req.to_unit,
        "input": req.value,
        "value": convert_value(req.value, req.from_unit, req.to_unit),
    }


def _handle_impacts(payload: Any) -> dict[str, Any]:
    document = parse_assessment_document(payload)
    report = evaluate(document.assessment)
    return impacts_to_dict(adjustment_impacts(document.assessment), report.woe_total)


def create_app() -> FastAPI:
    """Build the service application."""
    app = FastAPI(
        title="woekit",
        version=__version__,
        docs_url=None,
        redoc_url=None,
        openapi_url=None,
    )
    # browser clients are served from another origin during development
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/v1/health")
    async def health() -> dict[str, str]:
        return {"status": "ok", "version": __version__}

    @app.post("/v1/evaluate")
    async def evaluate_endpoint(request: Request) -> JSONResponse:
        return await _dispatch(request, _handle_evaluate)

    @app.post("/v1/sweep")
    async def sweep_endpoint(request: Request) -> JSONResponse:
        return await _dispatch(request, _handle_sweep)

    @app.post("/v1/power")
    async def power_endpoint(request: Request) -> JSONResponse:
        return await _dispatch(request, _handle_power)

    @app.post("/v1/convert")
    async def convert_endpoint(request: Request) -> JSONResponse:
        return await _dispatch(request, _handle_convert)

    @app.post("/v1/impacts")
    async def impacts_endpoint(request: Request) -> JSONResponse:
        return await _dispatch(request, _handle_impacts)

    return app
