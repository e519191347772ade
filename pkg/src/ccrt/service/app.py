"""FastAPI service exposing reconstruction, estimation, robustness checks,
and the simulation campaigns.

Domain errors (invalid moduli, inconsistent remainders, bad campaign
configs) map to HTTP 400; payload shape errors are FastAPI's usual 422.
"""

from __future__ import annotations

from importlib import metadata

from fastapi import FastAPI, HTTPException
from pydantic import ValidationError

from ..config import format_cnum, load_campaign, parse_cnum
from ..crt import solve_common
from ..experiments import count_ops, run_campaign
from ..gaussian import format_gaussian
from ..mle import NoisyRemainders, estimate
from ..robustness import (
    ErrorVector,
    subset_condition,
    theoretical_rmse,
    weighted_mean_error,
)
from .schemas import (
    CountOpsRequest,
    CountOpsResponse,
    EstimateRequest,
    EstimateResponse,
    HealthResponse,
    OpsCountModel,
    ReconstructRequest,
    ReconstructResponse,
    RobustnessRequest,
    RobustnessResponse,
    SimulateRequest,
    SimulateResponse,
)


def _version() -> str:
    try:
        return metadata.version("ccrt")
    except metadata.PackageNotFoundError:  # pragma: no cover
        return "unknown"


def create_app() -> FastAPI:
    app = FastAPI(title="ccrt", version=_version())

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(version=_version())

    @app.post("/reconstruct", response_model=ReconstructResponse)
    def reconstruct(req: ReconstructRequest) -> ReconstructResponse:
        with _domain_errors():
            sys = req.system.build()
            remainders = [parse_cnum(s) for s in req.remainders]
            sol = solve_common(remainders, sys)
        return ReconstructResponse(
            n=format_cnum(sol.n),
            r_common=format_cnum(sol.r_common),
            q=[format_gaussian(q) for q in sol.q],
            n0=format_gaussian(sol.n0),
        )

    @app.post("/estimate", response_model=EstimateResponse)
    def estimate_endpoint(req: EstimateRequest) -> EstimateResponse:
        with _domain_errors():
            sys = req.system.build()
            obs = NoisyRemainders(
                tuple(parse_cnum(s) for s in req.remainders), tuple(req.sigmas)
            )
            est = estimate(obs, sys)
        return EstimateResponse(
            n_hat=format_cnum(est.n_hat),
            r_c_hat=format_cnum(est.r_c_hat),
            q_hat=[format_gaussian(q) for q in est.q_hat],
            n0_hat=format_gaussian(est.n0_hat),
            objective=est.objective,
            evaluations=est.evaluations,
            real_mults=est.real_mults,
        )

    @app.post("/robustness/subset-check", response_model=RobustnessResponse)
    def robustness(req: RobustnessRequest) -> RobustnessResponse:
        with _domain_errors():
            ev = ErrorVector.from_sigmas([parse_cnum(s) for s in req.deltas], req.sigmas)
            report = subset_condition(ev, req.M)
            mean = weighted_mean_error(ev)
            rmse = theoretical_rmse(req.sigmas)
        return RobustnessResponse(
            condition_holds=report.condition_holds,
            first_violating_subset=(
                None
                if report.first_violating_subset is None
                else list(report.first_violating_subset)
            ),
            mean_error=format_cnum(mean),
            rmse_theory=rmse,
        )

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest) -> SimulateResponse:
        with _domain_errors():
            cfg = load_campaign(req.config)
            result = run_campaign(cfg, threads=req.threads)
        return SimulateResponse(
            campaign=result.campaign,
            columns=list(result.columns),
            rows=[list(r) for r in result.rows],
            csv=result.to_csv(),
            manifest=result.manifest,
        )

    @app.post("/count-ops", response_model=CountOpsResponse)
    def count_ops_endpoint(req: CountOpsRequest) -> CountOpsResponse:
        with _domain_errors():
            counts = [count_ops(L, req.M, req.seed) for L in req.channel_counts]
        return CountOpsResponse(
            counts=[
                OpsCountModel(
                    L=c.L,
                    evaluations=c.evaluations,
                    real_mults=c.real_mults,
                    bound=c.bound,
                )
                for c in counts
            ]
        )

    return app


class _domain_errors:
    """Context manager turning ValueError/ValidationError into HTTP 400."""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None and issubclass(exc_type, (ValueError, ValidationError)):
            raise HTTPException(status_code=400, detail=str(exc))
        return False


app = create_app()
