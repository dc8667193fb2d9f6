"""HTTP service wrapping the computation pipelines.

One catalog instance lives for the lifetime of the app, so results
registered by one request (a solved line bundle, a product computed two
ways) are visible to later ones; registration is lock-serialized inside
the catalog.
"""

from __future__ import annotations

from typing import Any, Literal

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import pipeline
from .atlas import SpaceSpecError, UnknownBuiltinError
from .catalog import Catalog, NotRegisteredError
from .les import UnderdeterminedError
from .pipeline import MethodNotApplicableError, NoDecompositionError


class ChartSpec(BaseModel):
    id: str
    dim: int
    coordinates: list[str]


class TransitionSpec(BaseModel):
    from_chart: str = Field(alias="from")
    to: str
    matrix: list[list[int]]


class SpaceSpec(BaseModel):
    """Either a builtin (name plus parameters) or a custom atlas."""

    builtin: str | None = None
    k: int | None = None
    n: int | None = None
    name: str | None = None
    charts: list[ChartSpec] | None = None
    transitions: list[TransitionSpec] | None = None
    compact: bool | None = None


class ComputeRequest(BaseModel):
    space: SpaceSpec
    method: Literal["additive", "kunneth", "catalog"] = "additive"
    via: str | None = None
    max_q: int | None = None
    explain: bool = False
    partial: bool = False


class ComputeResponse(BaseModel):
    space: str
    method: str
    groups: dict[str, Any]
    notes: list[dict[str, str]]
    explain: dict[str, Any] | None = None


class VerifyRequest(BaseModel):
    space: SpaceSpec
    methods: list[Literal["additive", "kunneth", "catalog"]] = Field(
        min_length=2, max_length=2
    )
    bound: int = 16
    max_q: int | None = None


class VerifyResponse(BaseModel):
    space: str
    methods: list[str]
    bound: int
    degrees: dict[str, Any]
    all_equal: bool


def _resolve(spec: SpaceSpec):
    if spec.builtin is not None:
        return pipeline.resolve_space(builtin=spec.builtin, k=spec.k, n=spec.n)
    data = spec.model_dump(by_alias=True, exclude_none=True)
    return pipeline.resolve_space(spec=data)


_STATUS = {
    SpaceSpecError: 400,
    UnknownBuiltinError: 404,
    NotRegisteredError: 404,
    NoDecompositionError: 404,
    MethodNotApplicableError: 404,
    UnderdeterminedError: 422,
}


def create_app(catalog: Catalog | None = None) -> FastAPI:
    app = FastAPI(
        title="cohomc",
        description="Compactly supported cohomology of chart-glued curves and surfaces.",
    )
    app.state.catalog = catalog if catalog is not None else Catalog()

    for exc_type, status in _STATUS.items():

        @app.exception_handler(exc_type)
        async def _domain_error(request: Request, exc: Exception, status=status):
            return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.post("/compute", response_model=ComputeResponse)
    def compute(req: ComputeRequest) -> Any:
        space = _resolve(req.space)
        outcome = pipeline.compute(
            space,
            req.method,
            app.state.catalog,
            via=req.via,
            max_q=req.max_q,
            explain=req.explain,
            partial=req.partial,
        )
        return outcome.to_json()

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> Any:
        space = _resolve(req.space)
        return pipeline.verify(
            space,
            tuple(req.methods),
            app.state.catalog,
            bound=req.bound,
            max_q=req.max_q,
        )

    @app.get("/spaces")
    def spaces() -> Any:
        return {"builtins": pipeline.builtin_inventory()}

    @app.get("/catalog")
    def catalog_dump() -> Any:
        return app.state.catalog.to_json()

    return app


app = create_app()
