"""Named invariant suites runnable outside pytest (service and CLI selftest).

Each suite returns a list of check dicts {name, passed, value, tolerance};
suites are sized to finish in seconds.  The perturb flag injects a known
failing check, which lets callers exercise their failure handling.
"""

import math

import numpy as np

from .constants import funk_limit_const, radon_limit_const, sphere_area
from .fields import catalog_field, gaussian_field, latitude_bump
from .geometry import random_unit
from .limits import Profile1D, limit_certify, riesz_potential
from .meridional import latitude_scale, latitude_shift, reflect, slice_via_funk, symmetrize
from .quadrature import sphere_rule
from .radon import radon
from .stereo import (
    cap_measure_identity,
    norm_identity_sides,
    plane_measure_identity,
    slice_via_radon,
    stereo_to_plane,
    stereo_to_sphere,
)
from .transforms import cosine_transform, funk, shifted_cosine, slice_complete, slice_truncated
from .zonal import zonal_catalog, zonal_pipeline, zonal_slice0, zonal_slice1


def _check(name, err, tol):
    err = float(err)
    return {"name": name, "passed": bool(err <= tol), "value": err, "tolerance": tol}


def suite_geometry(rng, lat=32):
    checks = []
    for a in (0.0, 0.5, -0.5, 0.9):
        pts = random_unit(rng, 3, 200)
        rt = latitude_shift(latitude_shift(pts, a), a, inverse=True)
        checks.append(_check(f"latitude_shift_roundtrip_a={a}", np.abs(rt - pts).max(), 1e-10))
        rt = latitude_scale(latitude_scale(pts, a), a, inverse=True)
        checks.append(_check(f"latitude_scale_roundtrip_a={a}", np.abs(rt - pts).max(), 1e-10))
        ref = reflect(pts, a)
        back = reflect(ref.eta_star, a)
        checks.append(_check(f"reflection_involution_a={a}", np.abs(back.eta_star - pts).max(), 1e-10))
        checks.append(_check(f"reflection_weight_product_a={a}", np.abs(ref.rho * back.rho - 1).max(), 1e-10))
    for a in (0.0, 0.5, 1.0):
        x = rng.normal(size=(200, 2)) * 2.0
        eta = stereo_to_sphere(x, a)
        checks.append(_check(f"stereo_roundtrip_a={a}", np.abs(stereo_to_plane(eta, a) - x).max(), 1e-10))
    return checks


def suite_quadrature(rng, lat=32):
    checks = []
    for n in (2, 3):
        rule = sphere_rule(n, lat)
        err = abs(float(np.sum(rule.weights)) - sphere_area(n)) / sphere_area(n)
        checks.append(_check(f"area_S{n}", err, 1e-12))
    f = catalog_field("z2", 2)
    rule = sphere_rule(2, lat)
    err = abs(rule.integrate(f(rule.points)) - 4 * math.pi / 3) / (4 * math.pi / 3)
    checks.append(_check("degree2_moment", err, 1e-12))
    return checks


def suite_transforms(rng, lat=48):
    checks = []
    one = catalog_field("const1", 2)
    odd = catalog_field("z", 2)
    xi = random_unit(rng, 3)
    checks.append(_check("funk_const", abs(funk(one, xi, lat=lat) - 1.0), 1e-12))
    checks.append(_check("funk_kills_odd", abs(funk(odd, xi, lat=lat)), 1e-9))
    for a in (0.0, 0.5, 0.9, 1.0):
        xs = random_unit(rng, 3, 20)
        want = sphere_area(1) * (1.0 - a * a * xs[:, -1] ** 2) ** 0.5
        got = np.array([slice_complete(one, x, a, lat=lat) for x in xs])
        checks.append(_check(f"slice_const_law_a={a}", np.abs(got / want - 1).max(), 1e-10))
    xs = random_unit(rng, 3, 10)
    f = catalog_field("smooth1", 2)
    ev = max(
        abs(slice_complete(f, x, 0.5, lat=lat) - slice_complete(f, -x, 0.5, lat=lat)) for x in xs
    )
    checks.append(_check("slice_evenness", ev, 1e-12))
    return checks


def suite_funk_bridge(rng, lat=48):
    checks = []
    errs = []
    for name in ("const1", "z2", "smooth1"):
        f = catalog_field(name, 2)
        for a in (-0.5, 0.5, 0.9):
            for _ in range(4):
                xi = random_unit(rng, 3)
                errs.append(
                    abs(slice_complete(f, xi, a, lat=lat) - slice_via_funk(f, xi, a, lat=lat))
                )
    checks.append(_check("funk_factorization", max(errs), 1e-6))
    f = catalog_field("smooth1", 2)
    a = 0.5
    kernel_part = symmetrize(f, 2, a, -1)
    sup = max(abs(slice_complete(kernel_part, random_unit(rng, 3), a, lat=lat)) for _ in range(10))
    checks.append(_check("kernel_annihilated", sup, 1e-6))
    sym = symmetrize(f, 2, a, +1)
    pts = random_unit(rng, 3, 50)
    ref = reflect(pts, a)
    rho_star = reflect(ref.eta_star, a).rho
    resid = np.abs(sym(pts) - rho_star * sym(ref.eta_star)).max()
    checks.append(_check("symmetry_condition", resid, 1e-10))
    return checks


def suite_radon(rng, lat=48):
    checks = []
    g = gaussian_field(2)
    th = random_unit(rng, 2)
    errs = [abs(radon(g, th, t) - math.sqrt(math.pi) * math.exp(-t * t)) for t in (0.0, 0.7, 1.8)]
    checks.append(_check("gaussian_radon", max(errs), 1e-8))
    errs = []
    for a in (0.0, 0.5, 1.0):
        f = latitude_bump(2, a, margin=0.1, modulated=True)
        for _ in range(4):
            xi = random_unit(rng, 3)
            xi[-1] = abs(xi[-1])
            xi /= np.linalg.norm(xi)
            if xi[-1] > 0.95:
                xi[-1] = 0.95
                xi[:2] *= math.sqrt(1 - 0.95**2) / np.linalg.norm(xi[:2])
            errs.append(
                abs(slice_truncated(f, xi, a, lat=lat) - slice_via_radon(f, xi, a))
            )
    checks.append(_check("radon_factorization", max(errs), 1e-5))
    f = latitude_bump(2, 0.5, margin=0.1, modulated=True)
    lhs, rhs = norm_identity_sides("plane_mass", f, 0.5, lat=lat)
    checks.append(_check("plane_mass_identity", abs(lhs - rhs) / abs(rhs), 1e-6))
    lhs, rhs = plane_measure_identity(gaussian_field(2), 0.5, lat=lat)
    checks.append(_check("plane_measure_identity", abs(lhs - rhs) / abs(rhs), 1e-6))
    lhs, rhs = cap_measure_identity(f, 0.5, lat=lat)
    checks.append(_check("cap_measure_identity", abs(lhs - rhs) / abs(rhs), 1e-6))
    return checks


def suite_zonal(rng, lat=48):
    checks = []
    worst_closed, worst_direct = 0.0, 0.0
    for a in (0.0, 0.5, 1.0):
        for prof in zonal_catalog(a, 2):
            s = 0.55
            pipe = zonal_pipeline(prof.f0, s, a, 2)
            xi = np.array([math.sqrt(1 - s * s), 0.0, s])
            direct = slice_truncated(prof.field(), xi, a, lat=lat)
            worst_direct = max(worst_direct, abs(pipe - direct))
            if a == 0.0:
                worst_closed = max(worst_closed, abs(zonal_slice0(prof.f0, math.sqrt(1 - s * s), 2) - pipe))
            elif a == 1.0:
                worst_closed = max(worst_closed, abs(zonal_slice1(prof.f0, 2 * s * s - 1, 2) - pipe))
    checks.append(_check("zonal_closed_vs_pipeline", worst_closed, 1e-8))
    checks.append(_check("zonal_pipeline_vs_direct", worst_direct, 1e-6))
    s0 = zonal_slice0(lambda t: np.ones_like(t), 0.8, 2)
    checks.append(_check("anchor_half_circle", abs(s0 - math.pi) / math.pi, 1e-8))
    s1 = zonal_slice1(lambda t: np.ones_like(t), 2 * 0.36 - 1, 3)
    checks.append(_check("anchor_polar_sphere", abs(s1 - 4 * math.pi * (1 - 0.36)) / s1, 1e-8))
    return checks


def suite_limits(rng, lat=48):
    checks = []
    f = catalog_field("smooth1", 2)
    xi = random_unit(rng, 3)
    target = funk_limit_const(2) * funk(f, xi, lat=lat)
    study = limit_certify(lambda e: cosine_transform(f, xi, -1 + e, lat=lat), target)
    checks.append(_check("cosine_to_funk", abs(study.extrapolated - target) / abs(target),
                         5e-3 if study.monotone else -1.0))
    a = 0.5
    target = radon_limit_const(2) / math.sqrt(1 - a * a * xi[-1] ** 2) * slice_complete(f, xi, a, lat=lat)
    study = limit_certify(lambda e: shifted_cosine(f, xi, -1 + e, a, lat=lat), target)
    checks.append(_check("shifted_cosine_to_slice", abs(study.extrapolated - target) / abs(target),
                         5e-3 if study.monotone else -1.0))
    bump = Profile1D(lambda y: np.exp(-(y * 2) ** 2), (-2.0, 2.0))
    study = limit_certify(lambda e: riesz_potential(bump, 0.3, e), float(bump(np.array(0.3))))
    checks.append(_check("riesz_to_identity", abs(study.extrapolated - study.target),
                         5e-3 if study.monotone else -1.0))
    return checks


SUITES = {
    "geometry": suite_geometry,
    "quadrature": suite_quadrature,
    "transforms": suite_transforms,
    "funk_bridge": suite_funk_bridge,
    "radon": suite_radon,
    "zonal": suite_zonal,
    "limits": suite_limits,
}


def run_selftest(suites=None, seed: int = 0, perturb: bool = False) -> dict:
    """Run the requested suites (all by default) and report a summary."""
    names = list(SUITES) if not suites else list(suites)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites: {unknown}")
    results = {}
    all_pass = True
    for name in names:
        rng = np.random.default_rng(seed)
        checks = SUITES[name](rng)
        if perturb:
            checks.append(_check("injected_perturbation", 1.0, 1e-12))
        results[name] = checks
        all_pass = all_pass and all(c["passed"] for c in checks)
    failing = [
        f"{suite}:{c['name']}" for suite, cs in results.items() for c in cs if not c["passed"]
    ]
    return {"suites": results, "pass": all_pass, "failing": failing}
