"""FastAPI application exposing the package over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import QesError
from . import ops, schemas


def create_app() -> FastAPI:
    from .. import __version__

    app = FastAPI(title="qes-tcs", version=__version__)

    @app.exception_handler(QesError)
    async def _qes_error(request: Request, exc: QesError) -> JSONResponse:
        # one uniform wire shape for every domain failure: the caller
        # recovers the exception kind by name
        return JSONResponse(
            status_code=422,
            content={"kind": type(exc).__name__, "message": str(exc)},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return ops.health()

    @app.post("/validate", response_model=schemas.ValidateResponse)
    def validate(req: schemas.ParamsIn) -> schemas.ValidateResponse:
        return ops.validate(req)

    @app.post("/table", response_model=schemas.TableResponse)
    def table(req: schemas.TableRequest) -> schemas.TableResponse:
        return ops.table(req)

    @app.post("/normalize", response_model=schemas.NormalizeResponse)
    def normalize(req: schemas.NormalizeRequest) -> schemas.NormalizeResponse:
        return ops.normalize(req)

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
        return ops.verify(req)

    @app.post("/tcs", response_model=schemas.TcsResponse)
    def tcs(req: schemas.TcsRequest) -> schemas.TcsResponse:
        return ops.tcs(req)

    @app.get("/presets", response_model=schemas.PresetsResponse)
    def presets() -> schemas.PresetsResponse:
        return ops.presets()

    return app
