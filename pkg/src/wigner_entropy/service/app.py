"""HTTP service exposing the entropy engine.

Error mapping: schema violations are FastAPI's usual 422; semantically
invalid values rejected by the core raise 400 with code ``invalid_argument``;
quadrature that fails its convergence check returns 409 with code
``quadrature_nonconvergent``.  Frame searches always return 200 with a
``converged`` flag so partial results stay visible.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, HTTPException

from .. import __version__, pipeline
from ..exceptions import NonConvergentError, NotNormalizedError
from ..verify import run_verification
from .schemas import (
    CheckReport,
    EntropyRequest,
    EntropyResponse,
    FrameSearchRequest,
    FrameSearchResponse,
    HealthResponse,
    ScanRequest,
    ScanResponse,
    ScanRow,
    VerifyRequest,
    VerifyResponse,
    spinor_to_complex,
)

NODES_ENV_VAR = "WIGNER_ENTROPY_NODES"


def _nodes(requested):
    return pipeline.resolve_nodes(requested, os.environ.get(NODES_ENV_VAR))


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(
        status_code=400, detail={"code": "invalid_argument", "message": str(exc)}
    )


def _non_convergent(exc: Exception) -> HTTPException:
    estimate = getattr(exc, "error_estimate", None)
    return HTTPException(
        status_code=409,
        detail={
            "code": "quadrature_nonconvergent",
            "message": str(exc),
            "error_estimate": None if estimate is None else float(max(estimate.ravel())),
        },
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="wigner-entropy",
        version=__version__,
        description=(
            "Spin entropy of relativistic spin-1/2 wave packets: Wigner-rotated "
            "boosts, reduced spin density matrices, frame searches."
        ),
    )

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/entropy", response_model=EntropyResponse)
    def entropy_endpoint(request: EntropyRequest):
        try:
            point = pipeline.entropy_point(
                mass=request.mass,
                width=request.width,
                alpha=request.rapidity,
                axis=request.axis,
                chi=spinor_to_complex(request.spin),
                nodes=_nodes(request.nodes),
            )
        except (NonConvergentError, NotNormalizedError) as exc:
            raise _non_convergent(exc) from exc
        except ValueError as exc:
            raise _bad_request(exc) from exc
        return EntropyResponse(**point)

    @app.post("/scan", response_model=ScanResponse)
    def scan_endpoint(request: ScanRequest):
        try:
            rows = pipeline.scan_rows(
                mass=request.mass,
                widths=request.widths,
                alphas=request.alphas,
                axis=request.axis,
                nodes=_nodes(request.nodes),
            )
        except (NonConvergentError, NotNormalizedError) as exc:
            raise _non_convergent(exc) from exc
        except ValueError as exc:
            raise _bad_request(exc) from exc
        return ScanResponse(rows=[ScanRow(**row) for row in rows])

    @app.post("/verify", response_model=VerifyResponse)
    def verify_endpoint(request: VerifyRequest):
        checks = run_verification(seed=request.seed, nodes_per_axis=_nodes(request.nodes))
        reports = [
            CheckReport(
                name=c.name,
                category=c.category,
                passed=c.passed,
                measured=c.measured,
                threshold=c.threshold,
                detail=c.detail,
            )
            for c in checks
        ]
        return VerifyResponse(passed=all(c.passed for c in checks), checks=reports)

    def _frame(kind: str, request: FrameSearchRequest) -> FrameSearchResponse:
        try:
            result = pipeline.frame_search(
                kind,
                mass=request.mass,
                width=request.width,
                boost_alpha=request.boost_rapidity,
                boost_axis=request.boost_axis,
                chi=spinor_to_complex(request.spin),
                nodes=_nodes(request.nodes),
                max_evaluations=request.max_evaluations,
                max_iterations=request.max_iterations,
            )
        except (NonConvergentError, NotNormalizedError) as exc:
            raise _non_convergent(exc) from exc
        except ValueError as exc:
            raise _bad_request(exc) from exc
        return FrameSearchResponse(**result)

    @app.post("/frame/rest", response_model=FrameSearchResponse)
    def rest_frame_endpoint(request: FrameSearchRequest):
        return _frame("rest", request)

    @app.post("/frame/min-entropy", response_model=FrameSearchResponse)
    def min_entropy_endpoint(request: FrameSearchRequest):
        return _frame("min-entropy", request)

    return app


app = create_app()
