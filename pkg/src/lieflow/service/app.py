"""FastAPI service wrapping the core package.

All endpoints are stateless pure computations; a request either returns
the computed payload or a 400 whose detail carries the reason (and the
convergence radius where one is defined). Validation problems surface as
FastAPI's standard 422.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException

from ..checks import run_properties_report, run_relations_report
from ..duality import run_duality_report
from ..lie_analysis import (
    CapError,
    ChainSpec,
    DomainError,
    FlowRequest,
    OrderCapError,
    chain_bound,
    eps_chain_direct,
    eps_chain_pathsum,
    flow,
    flow_radius,
)
from ..multiindex import MultiIndex
from .schemas import (
    ComplexValue,
    DualityCheckRequestModel,
    FlowRequestModel,
    FlowResponseModel,
    PathsumRequestModel,
    PathsumResponseModel,
    PropertiesCheckRequestModel,
    RadiusRequestModel,
    RadiusResponseModel,
    RelationsCheckRequestModel,
)


def _bad_request(message: str, radius: float | None = None) -> HTTPException:
    if radius is not None and math.isinf(radius):
        radius = None
    return HTTPException(status_code=400,
                         detail={"error": message, "radius": radius})


def create_app() -> FastAPI:
    app = FastAPI(title="lieflow",
                  description="Lie-series integration of analytic vector "
                              "fields and the algebra checks behind it")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/flow", response_model=FlowResponseModel)
    def flow_endpoint(req: FlowRequestModel) -> FlowResponseModel:
        A = req.field.to_vector_field()
        x0 = tuple(v.to_complex() for v in req.x0)
        try:
            res = flow(FlowRequest(A, x0, req.t.to_complex(), req.tol),
                       order_cap=req.order_cap)
        except DomainError as exc:
            raise _bad_request(str(exc), exc.radius)
        except OrderCapError as exc:
            raise _bad_request(str(exc))
        return FlowResponseModel(
            y=[ComplexValue.of(v) for v in res.y],
            radius=res.radius,
            order=res.truncation_order,
            tail=res.tail_bound,
        )

    @app.post("/radius", response_model=RadiusResponseModel)
    def radius_endpoint(req: RadiusRequestModel) -> RadiusResponseModel:
        A = req.field.to_vector_field()
        x0 = tuple(v.to_complex() for v in req.x0)
        m, radius = flow_radius(A, x0)
        return RadiusResponseModel(m=m, radius=radius)

    @app.post("/pathsum", response_model=PathsumResponseModel)
    def pathsum_endpoint(req: PathsumRequestModel) -> PathsumResponseModel:
        fields = tuple(f.to_vector_field() for f in req.fields)
        chain = ChainSpec(fields, MultiIndex(tuple(req.alpha)),
                          MultiIndex(tuple(req.beta)))
        try:
            direct = eps_chain_direct(chain)
            path = eps_chain_pathsum(chain, cap=req.cap)
        except CapError as exc:
            raise _bad_request(str(exc))
        return PathsumResponseModel(direct=ComplexValue.of(direct),
                                    pathsum=ComplexValue.of(path),
                                    bound=chain_bound(chain))

    @app.post("/check/duality")
    def duality_endpoint(req: DualityCheckRequestModel) -> dict:
        return run_duality_report(trials=req.trials, seed=req.seed)

    @app.post("/check/relations")
    def relations_endpoint(req: RelationsCheckRequestModel) -> dict:
        return run_relations_report(p_max=req.p, deg_max=req.maxdeg)

    @app.post("/check/properties")
    def properties_endpoint(req: PropertiesCheckRequestModel) -> dict:
        return run_properties_report(seed=req.seed)

    return app


app = create_app()
