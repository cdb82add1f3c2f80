"""FastAPI application exposing the core computations over HTTP.

Every endpoint is stateless: a request carries all parameters, the
response carries all results, and identical requests give identical
responses. Input problems map to HTTP 400 (or 422 for malformed bodies),
internal numeric invariant violations to HTTP 500 with a ``numerics``
error type.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..dilation import dilation_angles, run_dilation
from ..errors import NumericsError
from ..evolution import evolve_local
from ..linalg import trace_distance
from ..states import (
    FamilyKind,
    StateFamily,
    make_state,
    pseudopure,
    purity,
    fidelity,
    state_from_dict,
    state_to_dict,
)
from ..sweeps import (
    Method,
    SweepSpec,
    contour_to_payload,
    default_t_max,
    run_contour,
    run_time_sweep,
)
from ..tomography import (
    MeasurementRecord,
    add_noise,
    measure_paulis,
    pauli_labels,
    reconstruct,
)
from . import schemas


def _error_payload(kind: str, exc: Exception) -> dict:
    return {"detail": {"type": kind, "message": str(exc)}}


def create_app() -> FastAPI:
    app = FastAPI(title="ptcoh", version=__version__)

    @app.exception_handler(NumericsError)
    async def numerics_handler(_: Request, exc: NumericsError) -> JSONResponse:
        return JSONResponse(status_code=500, content=_error_payload("numerics", exc))

    @app.exception_handler(ValueError)
    async def value_handler(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content=_error_payload("validation", exc))

    @app.get("/health")
    async def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/api/evolve", response_model=schemas.EvolveResponse)
    def evolve(req: schemas.EvolveRequest) -> schemas.EvolveResponse:
        family = StateFamily(FamilyKind(req.state), req.angle)
        spec = SweepSpec(
            family=family,
            r=req.r,
            t_max=req.t_max if req.t_max is not None else default_t_max(req.r),
            dt=req.dt,
            target_qubit=req.qubit,
            reduced_pair=(int(req.pair[0]), int(req.pair[1])) if req.pair else None,
            method=Method(req.method),
        )
        series = run_time_sweep(spec, threads=req.threads)
        return schemas.EvolveResponse(
            times=list(series.times),
            c_total=[tr.c_total for tr in series.triples],
            c_global=[tr.c_global for tr in series.triples],
            c_local=[tr.c_local for tr in series.triples],
            purity=list(series.purity),
            success_probability=(
                list(series.success_probability)
                if series.success_probability is not None
                else None
            ),
        )

    @app.post("/api/contour", response_model=schemas.ContourResponse)
    def contour(req: schemas.ContourRequest) -> schemas.ContourResponse:
        grid = run_contour(
            kind=FamilyKind(req.state),
            r=req.r,
            angle_steps=req.angle_steps,
            t_max=req.t_max if req.t_max is not None else default_t_max(req.r),
            dt=req.dt,
            target_qubit=req.qubit,
            threads=req.threads,
        )
        return schemas.ContourResponse(**contour_to_payload(grid))

    @app.post("/api/dilate", response_model=schemas.DilateResponse)
    def dilate(req: schemas.DilateRequest) -> schemas.DilateResponse:
        angles = dilation_angles(req.r, req.t)
        work = make_state(StateFamily(FamilyKind(req.state), req.angle))
        outcome = run_dilation(work, req.qubit, req.r, req.t)
        deviation = None
        if req.check:
            direct = evolve_local(work, req.qubit, req.r, req.t)
            deviation = trace_distance(direct.rho, outcome.postselected_state.rho)
        return schemas.DilateResponse(
            theta=angles.theta,
            phi=angles.phi,
            success_scale=angles.success_scale,
            success_probability=outcome.success_probability,
            max_deviation=deviation,
        )

    @app.post("/api/tomo", response_model=schemas.TomoResponse)
    def tomo(req: schemas.TomoRequest) -> schemas.TomoResponse:
        truth = make_state(StateFamily(FamilyKind(req.state), req.angle))
        labels = pauli_labels(truth.n_qubits)
        record = measure_paulis(truth, labels)
        if req.noise > 0.0:
            record = add_noise(record, req.noise, req.seed)
        result = reconstruct(record)
        return schemas.TomoResponse(
            fidelity=fidelity(truth, result.state),
            residual=result.residual,
            iterations=result.iterations,
            n_labels=len(labels),
            noise_sigma=req.noise,
            seed=req.seed,
        )

    @app.post("/api/tomo/reconstruct", response_model=schemas.ReconstructResponse)
    def tomo_reconstruct(req: schemas.ReconstructRequest) -> schemas.ReconstructResponse:
        record = MeasurementRecord(
            labels=tuple(req.labels),
            values=tuple(req.values),
            noise_sigma=req.noise_sigma,
            seed=req.seed,
        )
        result = reconstruct(record)
        return schemas.ReconstructResponse(
            state=schemas.StatePayload(**state_to_dict(result.state)),
            residual=result.residual,
            iterations=result.iterations,
        )

    @app.post("/api/state/make", response_model=schemas.StateInfoResponse)
    def state_make(req: schemas.StateMakeRequest) -> schemas.StateInfoResponse:
        if req.kind == "pseudopure":
            state = pseudopure(req.epsilon, req.n_qubits)
        else:
            state = make_state(StateFamily(FamilyKind(req.kind), req.angle))
        return schemas.StateInfoResponse(
            state=schemas.StatePayload(**state_to_dict(state)),
            purity=purity(state),
        )

    @app.post("/api/state/validate", response_model=schemas.StateInfoResponse)
    def state_validate(req: schemas.StatePayload) -> schemas.StateInfoResponse:
        state = state_from_dict(req.model_dump())
        return schemas.StateInfoResponse(
            state=schemas.StatePayload(**state_to_dict(state)),
            purity=purity(state),
        )

    return app
