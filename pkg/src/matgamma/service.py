"""HTTP service wrapping the library.

Request and response bodies mirror the JSON matrix document format.
Library errors map onto status codes: malformed input 400, pole
proximity and precondition violations 422, convergence failures 500.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .analysis import beta as beta_fn
from .analysis import cond_gamma, gamma_norm_bound, tail_bound
from .errors import (
    EXIT_MALFORMED,
    EXIT_NO_CONVERGENCE,
    EXIT_POLE,
    EXIT_PRECONDITION,
    MatGammaError,
    exit_code_for,
)
from .gamma_core import GammaMethod
from .linalg import UNIT_ROUNDOFF
from .schur_parlett import gamma
from .harness.experiment import (
    default_suite,
    records_to_csv,
    run_experiment,
    smoke_suite,
)
from .harness.gallery import gallery
from .harness.io import MatrixDocument, document_from_obj, document_to_obj

_STATUS_BY_EXIT = {
    EXIT_MALFORMED: 400,
    EXIT_POLE: 422,
    EXIT_NO_CONVERGENCE: 500,
    EXIT_PRECONDITION: 422,
}


class MatrixPayload(BaseModel):
    """Square complex matrix as nested [re, im] pairs."""

    n: int
    entries: list
    name: str | None = None

    def to_matrix(self) -> np.ndarray:
        return document_from_obj(self.model_dump(exclude_none=True)).to_matrix()

    @classmethod
    def from_matrix(cls, a, name: str | None = None) -> "MatrixPayload":
        obj = document_to_obj(MatrixDocument.from_matrix(a, name=name))
        return cls(**obj)


class GammaRequest(BaseModel):
    matrix: MatrixPayload
    method: GammaMethod = GammaMethod.LANCZOS


class GammaResponse(BaseModel):
    result: MatrixPayload
    method: GammaMethod


class BetaRequest(BaseModel):
    a: MatrixPayload
    b: MatrixPayload
    method: GammaMethod = GammaMethod.LANCZOS


class CondRequest(BaseModel):
    matrix: MatrixPayload
    method: GammaMethod = GammaMethod.LANCZOS


class CondResponse(BaseModel):
    cond: float
    cond_times_u: float


class BoundsRequest(BaseModel):
    matrix: MatrixPayload
    r: float = 1.0


class BoundsResponse(BaseModel):
    tail: dict
    norm: dict


class GalleryRequest(BaseModel):
    name: str
    n: int
    seed: int = 0


class BenchRequest(BaseModel):
    suite: str = Field(default="default", pattern="^(default|smoke)$")
    seed: int = 1


class BenchResponse(BaseModel):
    csv: str
    rows: int


def create_app() -> FastAPI:
    app = FastAPI(title="matgamma", version="0.1.0")

    @app.exception_handler(MatGammaError)
    async def _domain_error(_, exc: MatGammaError):
        status = _STATUS_BY_EXIT.get(exit_code_for(exc), 500)
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/health")
    async def health() -> dict:
        return {"status": "ok"}

    @app.post("/gamma", response_model=GammaResponse)
    async def gamma_endpoint(req: GammaRequest) -> GammaResponse:
        result = gamma(req.matrix.to_matrix(), req.method)
        return GammaResponse(
            result=MatrixPayload.from_matrix(result, name=req.matrix.name),
            method=req.method,
        )

    @app.post("/beta", response_model=GammaResponse)
    async def beta_endpoint(req: BetaRequest) -> GammaResponse:
        result = beta_fn(req.a.to_matrix(), req.b.to_matrix(), req.method)
        return GammaResponse(
            result=MatrixPayload.from_matrix(result), method=req.method
        )

    @app.post("/cond", response_model=CondResponse)
    async def cond_endpoint(req: CondRequest) -> CondResponse:
        value = cond_gamma(req.matrix.to_matrix(), req.method)
        return CondResponse(cond=value, cond_times_u=value * UNIT_ROUNDOFF)

    @app.post("/bounds", response_model=BoundsResponse)
    async def bounds_endpoint(req: BoundsRequest) -> BoundsResponse:
        a = req.matrix.to_matrix()
        return BoundsResponse(
            tail=tail_bound(a, req.r).as_dict(),
            norm=gamma_norm_bound(a).as_dict(),
        )

    @app.post("/gallery", response_model=MatrixPayload)
    async def gallery_endpoint(req: GalleryRequest) -> MatrixPayload:
        a = gallery(req.name, req.n, seed=req.seed)
        return MatrixPayload.from_matrix(a, name=f"{req.name}{req.n}")

    @app.post("/bench", response_model=BenchResponse)
    async def bench_endpoint(req: BenchRequest) -> BenchResponse:
        suite = default_suite(req.seed) if req.suite == "default" else smoke_suite(req.seed)
        records = run_experiment(suite)
        return BenchResponse(csv=records_to_csv(records), rows=len(records))

    return app
