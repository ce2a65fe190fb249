"""Surface integrals, spherical means, and kernel pairings on S^n.

The spherical mean of f at (xi, t) averages f over the subsphere cut by the
plane {eta : xi . eta = t}:

    mean(f; xi, t) = (1/area(S^{n-1})) * integral over S^n cap xi-perp of
                     f(sqrt(1-t^2) w + t xi)

with the continuous extension mean(f; xi, +-1) = f(+-xi).  Subsphere node
sets are also exposed with an optional cap clip {eta_last < a}; the clip
boundary is located analytically, so hard zero-extensions of cap fields are
integrated without smearing the jump.
"""

import numpy as np

from .constants import sphere_area
from .errors import DomainError, RangeError
from .fields import ScalarField
from .geometry import basis_last_aligned, orthonormal_basis
from .quadrature import (
    circle_directions,
    latitude_rule,
    latitude_singular_rule,
    segment_nodes,
    sphere_rule,
)

DEFAULT_LAT = 64


def integrate_sphere(f, n: int, lat: int = DEFAULT_LAT) -> float:
    """Integral of f over S^n with the product rule at the given resolution."""
    if isinstance(f, ScalarField) and f.domain == "plane":
        raise DomainError("integrate_sphere needs a field defined on the sphere")
    rule = sphere_rule(n, lat)
    return rule.integrate(f(rule.points))


def subsphere_nodes(
    xi: np.ndarray,
    offset: float,
    lat: int = DEFAULT_LAT,
    cap_a: float | None = None,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Quadrature nodes on the slice {eta : xi . eta = offset} (clipped to a cap).

    Returns (points, weights, radius) where summing weights * f(points)
    approximates the surface integral of f over the (n-1)-sphere of radius
    sqrt(1 - offset^2) centered at offset*xi, restricted to {eta_last < cap_a}
    when cap_a is given.  The cap crossing is solved in closed form.  Only
    n in {2, 3} is supported at runtime.
    """
    xi = np.asarray(xi, dtype=float)
    n = xi.size - 1
    r2 = 1.0 - offset * offset
    if r2 <= 1e-28:
        raise DomainError("slice degenerates to a point")
    radius = float(np.sqrt(r2))
    center = offset * xi
    if cap_a is not None and cap_a >= 1.0:
        cap_a = None  # the cap excludes only the pole, a measure-zero point
    basis, p = basis_last_aligned(xi)

    if n == 2:
        return _circle_nodes(center, radius, basis, p, lat, cap_a) + (radius,)
    if n == 3:
        return _two_sphere_nodes(center, radius, basis, p, lat, cap_a) + (radius,)
    raise DomainError(f"subsphere quadrature is implemented for n in {{2, 3}}, got n={n}")


def _circle_nodes(center, radius, basis, p, lat, cap_a):
    """Arc nodes on a circle; the last coordinate is center[-1] + R*p*sin(phi)."""
    b1, b2 = basis[:, 0], basis[:, 1]
    full = cap_a is None
    if not full:
        if radius * p < 1e-14:
            # constant-latitude circle: fully inside or fully outside the cap
            if center[-1] < cap_a:
                full = True
            else:
                return np.zeros((0, 3)), np.zeros(0)
        else:
            beta = (cap_a - center[-1]) / (radius * p)
            if beta >= 1.0:
                full = True
            elif beta <= -1.0:
                return np.zeros((0, 3)), np.zeros(0)
    if full:
        dirs, w = circle_directions(2 * lat)
        pts = center[None, :] + radius * (
            dirs[:, 0:1] * b1[None, :] + dirs[:, 1:2] * b2[None, :]
        )
        return pts, radius * w
    # arc {sin(phi) < beta} = (-pi - asin(beta), asin(beta))
    phi1 = float(np.arcsin(beta))
    phi, w = segment_nodes(-np.pi - phi1, phi1, 2 * lat)
    pts = center[None, :] + radius * (
        np.cos(phi)[:, None] * b1[None, :] + np.sin(phi)[:, None] * b2[None, :]
    )
    return pts, radius * w


def _two_sphere_nodes(center, radius, basis, p, lat, cap_a):
    """Latitude-clipped product nodes on a 2-sphere slice in R^4."""
    u_hi = 1.0
    if cap_a is not None:
        if radius * p < 1e-14:
            if center[-1] >= cap_a:
                return np.zeros((0, 4)), np.zeros(0)
        else:
            u_star = (cap_a - center[-1]) / (radius * p)
            if u_star <= -1.0:
                return np.zeros((0, 4)), np.zeros(0)
            u_hi = min(1.0, u_star)
    if u_hi >= 1.0:
        u, wu = latitude_rule(2, lat)
    else:
        u, wu = segment_nodes(-1.0, u_hi, lat)
    dirs, wphi = circle_directions(2 * lat)
    s = np.sqrt(np.clip(1.0 - u * u, 0.0, None))
    b1, b2, b3 = basis[:, 0], basis[:, 1], basis[:, 2]
    planar = dirs[:, 0:1] * b1[None, :] + dirs[:, 1:2] * b2[None, :]
    coeff = s[:, None, None] * planar[None, :, :] + u[:, None, None] * b3[None, None, :]
    pts = center[None, None, :] + radius * coeff
    w = radius * radius * (wu[:, None] * wphi[None, :])
    return pts.reshape(-1, 4), w.reshape(-1)


def spherical_mean(f, xi: np.ndarray, t: float, lat: int = DEFAULT_LAT) -> float:
    """Mean of f over the subsphere at signed height t along xi."""
    xi = np.asarray(xi, dtype=float)
    n = xi.size - 1
    if abs(t) > 1.0 + 1e-14:
        raise DomainError(f"spherical mean needs |t| <= 1, got {t}")
    if abs(t) >= 1.0 - 1e-14:
        val = f(np.sign(t) * xi[None, :]) if t != 0 else f(xi[None, :])
        return float(np.asarray(val).reshape(-1)[0])
    pts, w, radius = subsphere_nodes(xi, t, lat=lat)
    area = sphere_area(n - 1) * radius ** (n - 1)
    return float(np.dot(w, f(pts))) / area


def spherical_mean_profile(
    f, xi: np.ndarray, ts: np.ndarray, lat: int = DEFAULT_LAT, basis: np.ndarray | None = None
) -> np.ndarray:
    """Vector of spherical means of f at many heights along one axis.

    All heights share a single direction set, so f is evaluated once on a
    (len(ts) * nodes) batch.  Heights with |t| = 1 take the pole value.  For
    cap fields the zero-extension is meant; its jump across the cap boundary
    is handled by the analytically clipped subsphere rule.
    """
    xi = np.asarray(xi, dtype=float)
    n = xi.size - 1
    ts = np.asarray(ts, dtype=float)
    if isinstance(f, ScalarField) and f.domain == "cap":
        return _cap_mean_profile(f, xi, ts, lat)
    if basis is None:
        basis = orthonormal_basis(xi)
    sub = sphere_rule(n - 1, lat)
    dirs = sub.points @ basis.T  # (M, n+1) unit directions in xi-perp
    s = np.sqrt(np.clip(1.0 - ts * ts, 0.0, None))
    pts = s[:, None, None] * dirs[None, :, :] + ts[:, None, None] * xi[None, None, :]
    vals = f(pts.reshape(-1, n + 1)).reshape(ts.size, -1)
    means = vals @ sub.weights / sphere_area(n - 1)
    degenerate = np.abs(ts) >= 1.0 - 1e-14
    if np.any(degenerate):
        for i in np.nonzero(degenerate)[0]:
            means[i] = float(np.asarray(f(np.sign(ts[i]) * xi[None, :])).reshape(-1)[0])
    return means


def _cap_mean_profile(f: ScalarField, xi: np.ndarray, ts: np.ndarray, lat: int) -> np.ndarray:
    n = xi.size - 1
    means = np.empty(ts.size)
    for i, t in enumerate(np.atleast_1d(ts)):
        if abs(t) >= 1.0 - 1e-14:
            means[i] = float(np.asarray(f(np.sign(t) * xi[None, :])).reshape(-1)[0])
            continue
        pts, w, radius = subsphere_nodes(xi, float(t), lat=lat, cap_a=f.cap_a)
        total = float(np.dot(w, f(pts))) if pts.shape[0] else 0.0
        means[i] = total / (sphere_area(n - 1) * radius ** (n - 1))
    return means


def kernel_pairing(
    f,
    h,
    xi: np.ndarray,
    lat: int = DEFAULT_LAT,
    singularity: tuple[float, float] | None = None,
) -> float:
    """Pair f against a zonal kernel h(xi . eta) over the whole sphere.

    Computes area(S^{n-1}) * int_{-1}^{1} h(t) mean(f; xi, t) (1-t^2)^((n-2)/2) dt,
    which equals the sphere integral of h(xi . eta) f(eta).  A kernel with an
    interior algebraic singularity h(t) ~ |t - x0|^lam must declare
    singularity = (x0, lam); the singular factor is then handled by one-sided
    weighted rules and h is evaluated only through its smooth part.
    """
    xi = np.asarray(xi, dtype=float)
    n = xi.size - 1
    if singularity is None:
        t, w = latitude_rule(n, lat)
        kernel = np.asarray(h(t), dtype=float)
    else:
        x0, lam = singularity
        if lam <= -1.0:
            raise RangeError(f"kernel exponent must be > -1 for integrability, got {lam}")
        t, w = latitude_singular_rule(n, x0, lam, lat)
        kernel = np.asarray(h(t), dtype=float) * np.abs(t - x0) ** (-lam)
    means = spherical_mean_profile(f, xi, t, lat=lat)
    return sphere_area(n - 1) * float(np.dot(w, kernel * means))
