"""FastAPI application wrapping the check runners.

Check responses are serialized through the same byte-stable JSON writer the
CLI uses, so a report fetched over HTTP is identical to one written to disk
with the same configuration.
"""

from __future__ import annotations

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse

from ..errors import ValuadefError
from ..report import report_to_json
from . import runner
from .schemas import (
    CHECK_NAMES,
    CheckRequest,
    ErrorResponse,
    EvalRequest,
    EvalResponse,
    GroupRequest,
    GroupResponse,
)

app = FastAPI(
    title="valuadef",
    description="Exact ordered valued field arithmetic and definability checks",
    version="0.1.0",
)


@app.exception_handler(ValuadefError)
async def _domain_error(_request, exc: ValuadefError):
    return JSONResponse(
        status_code=400,
        content=ErrorResponse(error=str(exc), kind=type(exc).__name__).model_dump(),
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/checks")
def list_checks() -> dict:
    return {"checks": list(CHECK_NAMES)}


@app.post("/eval", response_model=EvalResponse)
def eval_expression(req: EvalRequest) -> EvalResponse:
    return runner.eval_expression(req)


@app.post("/group", response_model=GroupResponse)
def group_info(req: GroupRequest) -> GroupResponse:
    return runner.group_info(req)


@app.post("/check/{name}")
def run_check(name: str, req: CheckRequest) -> Response:
    report = runner.run_check(name, req)
    return Response(content=report_to_json(report), media_type="application/json")
