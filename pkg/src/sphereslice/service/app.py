"""HTTP service wrapping the transform library.

Endpoints:
  GET  /health       liveness and version
  POST /forward      forward transforms on a direction grid or random sample
  POST /reconstruct  catalog round trip with error metrics
  POST /selftest     invariant suites

Config problems surface as 400/422; non-finite numerics as 500 with kind
"numerical" in the detail, so clients can map them to distinct exit codes.
"""

import math
import time

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import DomainError, NumericalError, RangeError
from ..fields import (
    catalog_field,
    grid_colatitudes,
    grid_longitudes,
    latitude_bump,
    read_grid_file,
)
from ..geometry import random_unit
from ..meridional import slice_reconstruct, symmetrize, tabulate_slice_transform
from ..selftest import run_selftest
from ..stereo import batch_truncated_slices, plane_support_radius, reconstruct_truncated
from ..transforms import slice_complete, slice_truncated
from .schemas import (
    ForwardRequest,
    ForwardResponse,
    HealthResponse,
    ReconstructRequest,
    ReconstructResponse,
    SelftestRequest,
    SelftestResponse,
)

app = FastAPI(title="sphereslice service", version=__version__)


def _resolve_field(req: ForwardRequest):
    if req.field.endswith(".txt") or "/" in req.field:
        sampled = read_grid_file(req.field)
        if req.transform == "F" and sampled.a < 1.0:
            raise DomainError("complete-slice transform needs a full-sphere sample grid")
        return sampled.as_field()
    domain = "cap" if req.transform == "S" else "sphere"
    return catalog_field(req.field, req.n, domain=domain, a=req.a if domain == "cap" else None,
                         margin=req.margin)


def _directions(req) -> np.ndarray:
    upper = req.transform == "S"
    if req.grid is not None:
        rows, cols = req.grid
        if rows < 0 or cols < 0:
            raise DomainError("grid dims must be non-negative")
        if rows * cols == 0:
            return np.zeros((0, req.n + 1))
        if req.n != 2:
            raise DomainError("direction grids are implemented for n = 2")
        thetas = grid_colatitudes(rows)
        if upper:
            thetas = thetas[thetas < math.pi / 2.0]
        phis = grid_longitudes(cols)
        pts = [
            [math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)]
            for th in thetas
            for ph in phis
        ]
        return np.asarray(pts)
    count = req.random_points if req.random_points is not None else 100
    rng = np.random.default_rng(req.seed)
    xs = random_unit(rng, req.n + 1, count)
    if upper:
        xs[:, -1] = np.abs(xs[:, -1])
        keep = xs[:, -1] < 0.98
        xs = xs[keep]
    return xs


def _guard(fn):
    try:
        return fn()
    except (DomainError, RangeError, KeyError, FileNotFoundError) as exc:
        raise HTTPException(status_code=400, detail={"kind": "config", "message": str(exc)})
    except NumericalError as exc:
        raise HTTPException(status_code=500, detail={"kind": "numerical", "message": str(exc)})


@app.get("/health", response_model=HealthResponse)
def health():
    return HealthResponse(status="ok", version=__version__)


@app.post("/forward", response_model=ForwardResponse)
def forward(req: ForwardRequest):
    def run():
        f = _resolve_field(req)
        xs = _directions(req)
        vals = np.empty(xs.shape[0])
        for i, xi in enumerate(xs):
            if req.transform == "F":
                vals[i] = slice_complete(f, xi, req.a, lat=req.resolution)
            else:
                vals[i] = slice_truncated(f, xi, req.a, lat=req.resolution)
        if vals.size and not np.all(np.isfinite(vals)):
            raise NumericalError("forward transform produced non-finite values")
        cols = [f"xi{i + 1}" for i in range(req.n + 1)] + ["value"]
        rows = [[*map(float, xi), float(v)] for xi, v in zip(xs, vals)]
        return ForwardResponse(
            columns=cols, rows=rows, transform=req.transform, n=req.n, a=req.a, field=req.field
        )

    return _guard(run)


@app.post("/reconstruct", response_model=ReconstructResponse)
def reconstruct(req: ReconstructRequest):
    def run():
        t0 = time.time()
        rows_n, cols_n = req.grid
        if rows_n <= 0 or cols_n <= 0:
            raise DomainError("reconstruction grid must be non-empty")
        if req.transform == "F":
            if not -1.0 < req.a < 1.0:
                raise DomainError("complete-slice reconstruction needs |a| < 1")
            base = catalog_field(req.field, req.n)
            truth = symmetrize(base, req.n, req.a, +1)
            data = tabulate_slice_transform(truth, req.n, req.a, lat=req.resolution)
            thetas = grid_colatitudes(rows_n)
            phis = grid_longitudes(cols_n)
            etas = np.array(
                [
                    [math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)]
                    for th in thetas
                    for ph in phis
                ]
            )
            rec = np.array(
                [slice_reconstruct(data, eta, req.a, lat=req.resolution) for eta in etas]
            )
            tol = req.tolerance if req.tolerance is not None else 1e-2
        else:
            if req.field not in ("cap_bump", "cap_bump_mod"):
                raise DomainError("truncated reconstruction needs a margin bump catalog field")
            truth = latitude_bump(
                req.n, req.a, margin=req.margin, lo=-0.9, modulated=req.field.endswith("mod"),
                name=req.field,
            )
            data = batch_truncated_slices(truth, req.a, lat=req.resolution)
            top = req.a - req.margin
            thetas = np.arccos(
                np.linspace(max(-0.92, -1 + 1e-3), top + 0.05, rows_n)
            )
            phis = grid_longitudes(cols_n)
            etas = np.array(
                [
                    [math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)]
                    for th in thetas
                    for ph in phis
                ]
            )
            radius = plane_support_radius(req.a, top + 0.08)
            rec = reconstruct_truncated(data, etas, req.a, support_radius=radius)
            tol = req.tolerance if req.tolerance is not None else 2e-2
        truth_vals = truth(etas)
        err = rec - truth_vals
        denom = float(np.linalg.norm(truth_vals))
        rel_l2 = float(np.linalg.norm(err)) / denom if denom > 0 else float(np.linalg.norm(err))
        if not np.all(np.isfinite(rec)):
            raise NumericalError("reconstruction produced non-finite values")
        metrics = {
            "rel_l2": rel_l2,
            "max_abs": float(np.abs(err).max()),
            "runtime_s": time.time() - t0,
        }
        cols = [f"eta{i + 1}" for i in range(req.n + 1)] + ["reconstructed", "truth"]
        rows = [
            [*map(float, eta), float(r), float(tv)]
            for eta, r, tv in zip(etas, rec, truth_vals)
        ]
        summary = {
            "command": "reconstruct",
            "config": req.model_dump(),
            "metrics": metrics,
            "pass": rel_l2 <= tol,
        }
        return ReconstructResponse(columns=cols, rows=rows, summary=summary)

    return _guard(run)


@app.post("/selftest", response_model=SelftestResponse)
def selftest(req: SelftestRequest):
    def run():
        try:
            report = run_selftest(suites=req.suites, seed=req.seed, perturb=req.perturb)
        except KeyError as exc:
            raise DomainError(str(exc))
        return SelftestResponse(report=report, **{"pass": report["pass"]})

    return _guard(run)
