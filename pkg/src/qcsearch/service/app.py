"""HTTP surface: one POST route per analysis command.

Routes validate with the pydantic request models, run the shared
handlers, and return the pre-rendered body so responses are
byte-identical to what the in-process CLI path prints.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException, Response

from .. import __version__
from ..errors import InvariantError
from . import handlers
from .schemas import (
    Envelope,
    GainRequest,
    KoptRequest,
    PromiseRequest,
    SimulateRequest,
    Table1Request,
)

app = FastAPI(
    title="qcsearch",
    version=__version__,
    description=(
        "Query-cost analysis and Monte Carlo evaluation of hybrid "
        "quantum-then-classical search strategies."
    ),
)


def _respond(envelope: Envelope) -> Response:
    content, media_type = handlers.render(envelope)
    return Response(content=content, media_type=media_type)


def _run(handler, request) -> Response:
    try:
        return _respond(handler(request))
    except InvariantError as exc:
        raise HTTPException(status_code=500, detail=str(exc))
    except (ValueError, ZeroDivisionError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.get("/v1/health")
def health() -> dict[str, str]:
    return {"status": "ok", "tool": handlers.TOOL_NAME, "version": __version__}


@app.post("/v1/gain")
def gain(request: GainRequest) -> Response:
    return _run(handlers.handle_gain, request)


@app.post("/v1/kopt")
def kopt(request: KoptRequest) -> Response:
    return _run(handlers.handle_kopt, request)


@app.post("/v1/table1")
def table1(request: Table1Request) -> Response:
    return _run(handlers.handle_table1, request)


@app.post("/v1/simulate")
def simulate(request: SimulateRequest) -> Response:
    return _run(handlers.handle_simulate, request)


@app.post("/v1/promise")
def promise(request: PromiseRequest) -> Response:
    return _run(handlers.handle_promise, request)
