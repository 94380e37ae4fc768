"""FastAPI service exposing the beam analysis pipeline.

All computation is stateless and pure, so the endpoints are safe under
concurrent requests.  Numerical failures (root shortfall is reported
inline; a non-frequency alpha maps to 409) are distinguished from request
validation errors (422, produced by the schema layer).
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import beam, checks, interface
from ..errors import FrequencyShortfallError, NotAFrequencyError
from . import schemas

#: relative tolerance applied to residual verification reports
VERIFY_RTOL = 1e-6


def _beam_model(params: schemas.BeamParams) -> beam.BeamModel:
    return beam.BeamModel(A=params.A, k=params.k, m=params.m, xi0=params.xi0,
                          lambda0=params.lambda0, lambda1=params.lambda1,
                          bc=params.bc)


def _find(req: schemas.FreqRequest, bm: beam.BeamModel):
    return beam.find_frequencies(bm, req.n_modes, req.alpha_max,
                                 req.grid_step, req.tol)


def _mode_exprs(mode: beam.Mode):
    from ..smooth import cos_expr, cosh_expr, sin_expr, sinh_expr
    a1, b1, c1, d1, a2, b2, c2, d2 = mode.consts
    ab = mode.alpha * mode.beta
    phi1 = (a1 * sin_expr(mode.alpha) + b1 * cos_expr(mode.alpha)
            + c1 * sinh_expr(mode.alpha) + d1 * cosh_expr(mode.alpha))
    phi2 = (a2 * sin_expr(ab) + b2 * cos_expr(ab)
            + c2 * sinh_expr(ab) + d2 * cosh_expr(ab))
    return phi1, phi2


def create_app() -> FastAPI:
    app = FastAPI(title="deltabeam", version="0.1.0",
                  description="Modal analysis of beams with stiffness jumps "
                              "and point cracks")

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/freq", response_model=schemas.FreqResponse)
    def freq(req: schemas.FreqRequest) -> schemas.FreqResponse:
        bm = _beam_model(req)
        shortfall = None
        try:
            alphas = _find(req, bm)
        except FrequencyShortfallError as err:
            alphas = err.found
            shortfall = schemas.Shortfall(found=len(err.found),
                                          requested=err.requested,
                                          detail=str(err))
        modes = [schemas.ModeRow(mode_index=i + 1, alpha=a,
                                 omega=beam.alpha_to_omega(bm, a))
                 for i, a in enumerate(alphas)]
        return schemas.FreqResponse(modes=modes, shortfall=shortfall)

    @app.post("/sweep", response_model=schemas.SweepResponse)
    def run_sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
        bm = _beam_model(req)
        if req.count == 1:
            grid = (req.start,)
        else:
            grid = tuple(np.linspace(req.start, req.stop, req.count))
        try:
            spec = beam.SweepSpec(varying=req.param, grid=grid, base=bm,
                                  n_modes=req.n_modes)
        except ValueError as err:
            raise HTTPException(status_code=422, detail=str(err))
        result = beam.sweep(spec, req.alpha_max, req.grid_step, req.tol)
        rows = [schemas.SweepRowOut(value=r.value, alphas=list(r.alphas),
                                    flagged=r.flagged, note=r.note)
                for r in result.rows]
        return schemas.SweepResponse(param=req.param, n_modes=req.n_modes,
                                     rows=rows)

    @app.post("/shape", response_model=schemas.ShapeResponse)
    def shape(req: schemas.ShapeRequest) -> schemas.ShapeResponse:
        bm = _beam_model(req)
        try:
            if req.alpha is not None:
                alpha = req.alpha
            else:
                if req.mode_index > req.n_modes:
                    raise HTTPException(
                        status_code=422,
                        detail=f"mode_index {req.mode_index} exceeds n_modes "
                               f"{req.n_modes}")
                alpha = _find(req, bm)[req.mode_index - 1]
            mode = beam.mode_shape(bm, alpha)
        except FrequencyShortfallError as err:
            raise HTTPException(status_code=409, detail=str(err))
        except NotAFrequencyError as err:
            raise HTTPException(status_code=409, detail={
                "message": str(err), "alpha": err.alpha,
                "abs_det": abs(err.det), "sigma_min": err.sigma_min})
        xs = np.linspace(0.0, 1.0, req.samples)
        phi = beam.eval_mode(mode, bm, xs)
        return schemas.ShapeResponse(alpha=mode.alpha,
                                     omega=beam.alpha_to_omega(bm, mode.alpha),
                                     consts=list(mode.consts),
                                     x=[float(v) for v in xs],
                                     phi=[float(v) for v in phi])

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
        bm = _beam_model(req)
        try:
            alphas = _find(req, bm)
        except FrequencyShortfallError as err:
            raise HTTPException(status_code=409, detail=str(err))
        reports = []
        for i, alpha in enumerate(alphas):
            mode = beam.mode_shape(bm, alpha)
            coeffset = beam.to_coeffset(bm, beam.alpha_to_omega(bm, alpha))
            phi1, phi2 = _mode_exprs(mode)
            rep = interface.residual_check(phi1, phi2, coeffset,
                                           interval=(0.0, 1.0))
            v1, v2 = beam.mode_half_vectors(mode, bm)
            iface = beam.interface_residual(bm, alpha, v1, v2)
            passed = rep.within(VERIFY_RTOL) and bool(np.max(np.abs(iface)) < 1e-7)
            reports.append(schemas.ModeVerification(
                mode_index=i + 1, alpha=alpha,
                delta_coeffs={k: float(v) for k, v in rep.delta_coeffs.items()},
                smooth_residual_max=rep.smooth_residual_max,
                scale=rep.scale,
                interface_residual=[float(v) for v in iface],
                passed=passed))
        return schemas.VerifyResponse(modes=reports, tolerance=VERIFY_RTOL,
                                      all_passed=all(r.passed for r in reports))

    @app.post("/algebra-check", response_model=schemas.AlgebraCheckResponse)
    def algebra_check(req: schemas.AlgebraCheckRequest) -> schemas.AlgebraCheckResponse:
        report = checks.full_report(seed=req.seed, triples=req.triples)
        lines = [schemas.CheckLineOut(name=l.name, max_error=l.max_error,
                                      tolerance=l.tolerance, passed=l.passed)
                 for l in report.lines]
        return schemas.AlgebraCheckResponse(checks=lines,
                                            n_passed=report.n_passed,
                                            n_failed=report.n_failed,
                                            all_passed=report.all_passed)

    return app


app = create_app()
