"""FastAPI service wrapping the core package.

Every operation of the toolkit is exposed as a POST endpoint with the
pydantic models of ``schemas`` as request/response bodies.  Negative
mathematical verdicts (infeasible data, unbounded operators) are normal
200 responses carrying a status field; only malformed or out-of-domain
input produces an error status.
"""

import random

from fastapi import FastAPI, HTTPException

from . import flatbound, operators, pick, unitaryop
from .errors import MonopError, NotInterpolable
from .flatbound import BoundaryProfile, poisson_integral
from .funcexpr import parse
from .halfplane import HalfPlaneAutomorphism, moebius_lambda
from .schemas import (ApplyRequest, FlatCheckRequest, FlatCheckResponse,
                      MonomialSumModel, NormRequest, NormResponse, NormRow,
                      NpInterpRequest, NpInterpResponse, PickCheckRequest,
                      PickCheckResponse, PoissonSweepRequest,
                      PoissonSweepResponse, PsdVerdictModel, UnitaryRequest,
                      UnitaryResponse, unitary_spec_model, _c, _pair)

app = FastAPI(title="monop", version="0.1.0",
              description="Monomial operators on L2[0,1]: feasibility, "
                          "application, norms, boundedness, unitaries.")


def _verdict_model(size: int, v: pick.PsdVerdict) -> PsdVerdictModel:
    witness = None
    if v.witness is not None:
        witness = [_pair(complex(x)) for x in v.witness]
    return PsdVerdictModel(size=size, status=v.status,
                           min_eig=float(v.min_eigenvalue),
                           boundary=bool(v.boundary), witness=witness)


def _bad_request(exc: MonopError):
    return HTTPException(status_code=400,
                         detail={"error": type(exc).__name__,
                                 "message": str(exc)})


@app.post("/pick-check", response_model=PickCheckResponse)
def pick_check(req: PickCheckRequest) -> PickCheckResponse:
    try:
        ps = [_c(v) for v in req.p]
        tol = req.tol if req.tol is not None else pick.DEFAULT_TOL
        verdicts = []
        for size in req.sizes:
            M = pick.pick_matrix(ps, size)
            verdicts.append(_verdict_model(size, pick.psd_check(M.entries, tol)))
    except (MonopError, ValueError) as exc:
        raise _bad_request(exc) if isinstance(exc, MonopError) else \
            HTTPException(status_code=400, detail=str(exc))
    return PickCheckResponse(verdicts=verdicts,
                             all_psd=all(v.status == "psd" for v in verdicts))


@app.post("/np-interp", response_model=NpInterpResponse)
def np_interp(req: NpInterpRequest) -> NpInterpResponse:
    nodes = [_c(v) for v in req.nodes]
    targets = [_c(v) for v in req.targets]
    try:
        tol = req.tol if req.tol is not None else pick.DEFAULT_TOL
        beta = pick.np_interpolate(nodes, targets, tol)
    except NotInterpolable as exc:
        verdict = None
        if exc.verdict is not None:
            verdict = _verdict_model(len(nodes), exc.verdict)
        return NpInterpResponse(status="infeasible", verdict=verdict)
    except (MonopError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    residual = max(abs(beta(z) - w) for z, w in zip(nodes, targets))
    rng = random.Random(req.seed)
    grid_max = 0.0
    for _ in range(req.n_grid):
        s = complex(-0.5 + 10 ** rng.uniform(-2, 2), rng.uniform(-50, 50))
        grid_max = max(grid_max, abs(moebius_lambda(beta(s))))
    return NpInterpResponse(
        status="ok", node_residual=residual, grid_max_abs_disk_value=grid_max,
        disk_nodes=[_pair(z) for z in beta.nodes],
        params=[_pair(g) for g in beta.params],
        constant_from=beta.constant_from)


@app.post("/apply", response_model=MonomialSumModel)
def apply_op(req: ApplyRequest) -> MonomialSumModel:
    try:
        spec = req.spec.to_core()
        image = operators.apply(spec, req.f.to_core())
    except (MonopError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return MonomialSumModel.from_core(image)


@app.post("/norm", response_model=NormResponse)
def norm(req: NormRequest) -> NormResponse:
    try:
        spec = req.spec.to_core()
        rows = [NormRow(N=n, estimate=operators.norm_estimate(spec, n,
                                                              digits=req.digits))
                for n in req.Ns]
    except (MonopError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return NormResponse(rows=rows)


@app.post("/flat-check", response_model=FlatCheckResponse)
def flat_check(req: FlatCheckRequest) -> FlatCheckResponse:
    try:
        g = parse(req.g)
        verdict = flatbound.flat_verdict(g, _c(req.tau), req.scan.to_core())
    except (MonopError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return FlatCheckResponse(
        status=verdict.status, sup=verdict.sup, grid=verdict.grid,
        witness=list(verdict.witness) if verdict.witness else None,
        samples=[list(r) for r in verdict.samples] if req.include_samples else None)


@app.post("/unitary", response_model=UnitaryResponse)
def unitary(req: UnitaryRequest) -> UnitaryResponse:
    try:
        A = HalfPlaneAutomorphism(req.theta, _c(req.a))
    except (MonopError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    if req.action == "build":
        return UnitaryResponse(spec=unitary_spec_model(req.theta, _c(req.a)))
    spec = unitaryop.build_unitary(A, req.theta)
    rng = random.Random(req.seed)

    def point():
        return complex(-0.5 + 10 ** rng.uniform(-2, 1), rng.uniform(-10, 10))

    samples = [(point(), point()) for _ in range(req.n_samples)]
    return UnitaryResponse(residual=unitaryop.isometry_check(spec, samples))


@app.post("/poisson-sweep", response_model=PoissonSweepResponse)
def poisson_sweep(req: PoissonSweepRequest) -> PoissonSweepResponse:
    try:
        profile = BoundaryProfile.from_expr(parse(req.g))
        profile.check_tail()
        scan = req.scan.to_core()
        points = [(float(s), float(t)) for s in scan.sigmas() for t in scan.ts()]

        def one(pt):
            return poisson_integral(profile, pt[0], pt[1])

        values = flatbound._scan_map(one, points, scan.jobs)
        rows = [[s, t, v] for (s, t), v in zip(points, values)]
    except (MonopError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return PoissonSweepResponse(rows=rows)
