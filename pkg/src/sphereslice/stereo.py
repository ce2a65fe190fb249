"""Stereographic bridge between cap functions and the plane Radon transform.

The projection with pole at (0, ..., 0, a) maps R^n bijectively onto the cap
{eta_last < a}:

    pi(x) = P(x) x + Q(x) e_last,
    D(x) = sqrt(a+1) sqrt(|x|^2 (1-a) + a + 1),
    P(x) = (a(a+1) + D) / (|x|^2 + (a+1)^2),
    Q(x) = (a|x|^2 - (a+1) D) / (|x|^2 + (a+1)^2),
    pi^{-1}(eta) = (a+1) eta' / (a - eta_last),

with the measure weight w(eta) = (a+1)^n (1 - a eta_last) / (a - eta_last)^(n+1).
Conjugating the plane Radon transform with the weighted maps below produces
the truncated slice transform, and inverting the chain reconstructs cap
functions from their truncated slice integrals.
"""

import math

import numpy as np

from .constants import sphere_area
from .errors import DomainError
from .fields import CAP, ScalarField, cap_field, plane_field
from .radon import RampInverter, radon, semyanistyi
from .sphere import DEFAULT_LAT
from .transforms import slice_truncated


def _check_a(a: float) -> None:
    if not -1.0 < a <= 1.0:
        raise DomainError(f"pole height must lie in (-1, 1], got {a}")


def stereo_factors(x: np.ndarray, a: float):
    """Return (P, Q, D, w o pi) at plane points x (vectorized)."""
    _check_a(a)
    x = np.asarray(x, dtype=float)
    r2 = np.sum(x * x, axis=-1)
    d = math.sqrt(a + 1.0) * np.sqrt(r2 * (1.0 - a) + a + 1.0)
    denom = r2 + (a + 1.0) ** 2
    p = (a * (a + 1.0) + d) / denom
    q = (a * r2 - (a + 1.0) * d) / denom
    n = x.shape[-1]
    w_pi = d / ((a + 1.0) * p**n)
    return p, q, d, w_pi


def stereo_to_sphere(x: np.ndarray, a: float) -> np.ndarray:
    """Project plane points onto the cap {eta_last < a}."""
    x = np.asarray(x, dtype=float)
    p, q, _, _ = stereo_factors(x, a)
    return np.concatenate([p[..., None] * x, q[..., None]], axis=-1)


def stereo_to_plane(eta: np.ndarray, a: float) -> np.ndarray:
    """Inverse projection (a+1) eta' / (a - eta_last); needs eta_last < a."""
    _check_a(a)
    eta = np.asarray(eta, dtype=float)
    gap = a - eta[..., -1]
    if np.any(gap <= 0.0):
        raise DomainError("stereo_to_plane needs points strictly below the cap height")
    return (a + 1.0) * eta[..., :-1] / gap[..., None]


def cap_weight(eta: np.ndarray, a: float) -> np.ndarray:
    """Jacobian weight w(eta) relating plane and cap measures."""
    _check_a(a)
    eta = np.asarray(eta, dtype=float)
    n = eta.shape[-1] - 1
    gap = a - eta[..., -1]
    return (a + 1.0) ** n * (1.0 - a * eta[..., -1]) / gap ** (n + 1)


def plane_support_radius(cap_a: float, top: float) -> float:
    """Radius of the plane image of {eta_last <= top}; increasing in top."""
    if top >= cap_a:
        raise DomainError("support must stay strictly below the cap height")
    return (cap_a + 1.0) * math.sqrt(max(0.0, 1.0 - top * top)) / (cap_a - top)


def push_to_plane(f: ScalarField, a: float, lam: float | None = None) -> ScalarField:
    """Weighted pushforward of a cap field to a compactly supported plane field.

    Default (lam = None) builds the map whose Radon transform reproduces the
    truncated slices: u(x) = (a+1) P^(n-1)(x) f(pi(x)) / D(x).  A fractional
    order lam instead uses u(x) = f(pi(x)) P^lam(x) / (w o pi)(x), the variant
    paired with the fractional plane integrals.  The cap field needs a
    positive support margin so the image has finite support radius.
    """
    if f.domain != CAP:
        raise DomainError("push_to_plane expects a cap field")
    if f.margin <= 0.0:
        raise DomainError("cap field needs a positive support margin")
    _check_a(a)
    n = f.n
    radius = plane_support_radius(a, a - f.margin)

    def fn(x):
        p, _, d, w_pi = stereo_factors(x, a)
        vals = np.asarray(f(stereo_to_sphere(x, a)), dtype=float)
        if lam is None:
            return (a + 1.0) * p ** (n - 1) * vals / d
        return vals * p**lam / w_pi

    return plane_field(fn, n, radius, smooth=f.smooth, name=f"plane({f.name})")


def pull_from_plane(g, n: int, a: float, lam: float | None = None) -> ScalarField:
    """Inverse of push_to_plane, evaluable on the cap.

    Default: f(eta) = (a+1)^(n-1) (1 - a eta_last) / (a - eta_last)^n *
    g((a+1) eta'/(a - eta_last)).
    """
    _check_a(a)

    def fn(eta):
        eta = np.asarray(eta, dtype=float)
        gap = a - eta[..., -1]
        safe = np.where(gap > 1e-300, gap, np.nan)
        x = (a + 1.0) * eta[..., :-1] / safe[..., None]
        vals = np.asarray(g(x), dtype=float)
        w = cap_weight(eta, a)
        p_at_eta = gap / (a + 1.0)
        exponent = 1.0 if lam is None else -lam
        return vals * w * p_at_eta**exponent

    return cap_field(fn, n, a, margin=0.0, name="pulled")


def profile_to_sphere(phi, n: int, a: float, lam: float | None = None) -> ScalarField:
    """Turn plane-profile data phi(theta, t) into a field on the upper half sphere.

    Default weight sqrt((1 - a^2 s^2)/(1 - s^2)) with argument
    t = (a+1) s / sqrt(1 - s^2); fractional variant uses (1-s^2)^(lam/2).
    phi must accept (theta (..., n), t (...)) arrays.
    """
    _check_a(a)

    def fn(xi):
        xi = np.asarray(xi, dtype=float)
        s = xi[..., -1]
        if np.any(s < -1e-12) or np.any(s >= 1.0 - 1e-15):
            raise DomainError("profile lift is defined on the open upper half sphere")
        sin = np.sqrt(np.clip(1.0 - s * s, 1e-300, None))
        theta = xi[..., :-1] / sin[..., None]
        t = (a + 1.0) * s / sin
        vals = np.asarray(phi(theta, t), dtype=float)
        if lam is None:
            return np.sqrt((1.0 - a * a * s * s) / (1.0 - s * s)) * vals
        return (1.0 - s * s) ** (lam / 2.0) * vals

    return ScalarField(fn, "sphere", n, name="lifted")


def sphere_to_profile(data, a: float, lam: float | None = None):
    """Inverse of profile_to_sphere: profiles (theta, t) from half-sphere data.

    Returns a callable phi(theta, t) with
    xi = ((a+1) theta + t e_last) / sqrt(t^2 + (a+1)^2) and the reciprocal
    weight sqrt((a+1) / (t^2 (1-a) + a + 1)) in the default case.
    """
    _check_a(a)

    def phi(theta, t):
        theta = np.asarray(theta, dtype=float)
        t = np.asarray(t, dtype=float)
        denom = np.sqrt(t**2 + (a + 1.0) ** 2)
        xi = np.concatenate(
            [
                (a + 1.0) * theta / denom[..., None],
                (t / denom)[..., None],
            ],
            axis=-1,
        )
        vals = np.asarray(data(xi), dtype=float)
        if lam is None:
            return np.sqrt((a + 1.0) / (t**2 * (1.0 - a) + a + 1.0)) * vals
        s = t / denom
        return (1.0 - s * s) ** (-lam / 2.0) * vals

    return phi


def slice_via_radon(f: ScalarField, xi: np.ndarray, a: float,
                    radon_nodes: int = 96) -> float:
    """Truncated slice transform through the plane Radon factorization."""
    xi = np.asarray(xi, dtype=float)
    s = float(xi[-1])
    if s < 0.0:
        raise DomainError("slices are labeled by xi in the upper half sphere")
    if s >= 1.0 - 1e-14:
        raise DomainError("the factorization has a pole at xi = north pole")
    u = push_to_plane(f, a)
    sin = math.sqrt(1.0 - s * s)
    theta = xi[:-1] / sin
    t = (a + 1.0) * s / sin
    val = radon(u, theta, t, nodes=radon_nodes)
    return math.sqrt((1.0 - a * a * s * s) / (1.0 - s * s)) * val


def fractional_slice_via_radon(f: ScalarField, xi: np.ndarray, lam: float, a: float,
                               nodes: int = 48, radon_nodes: int = 96) -> float:
    """Fractional factorization: lift of the Semyanistyi integral of the pushforward."""
    xi = np.asarray(xi, dtype=float)
    s = float(xi[-1])
    if not 0.0 <= s < 1.0 - 1e-14:
        raise DomainError("needs xi in the open upper half sphere")
    u = push_to_plane(f, a, lam=lam)
    sin = math.sqrt(1.0 - s * s)
    theta = xi[:-1] / sin
    t = (a + 1.0) * s / sin
    val = semyanistyi(u, theta, t, lam, nodes=nodes, radon_nodes=radon_nodes)
    return (1.0 - s * s) ** (lam / 2.0) * val


def batch_truncated_slices(f: ScalarField, a: float, lat: int = DEFAULT_LAT):
    """Vectorize the truncated slice transform over batches of directions."""

    def data(xis):
        xis = np.atleast_2d(np.asarray(xis, dtype=float))
        return np.array([slice_truncated(f, xi, a, lat=lat) for xi in xis])

    return data


def reconstruct_truncated(
    data,
    etas: np.ndarray,
    a: float,
    n: int = 2,
    support_radius: float | None = None,
    n_angles: int = 400,
    n_t: int = 512,
) -> np.ndarray:
    """Recover cap values from truncated slice data (n = 2 pipeline).

    data(xi_batch) -> values must evaluate the truncated slice transform on
    upper-half-sphere points.  The chain is: drop to plane profiles, invert
    the plane Radon transform by filtered backprojection, pull back to the
    cap.  support_radius bounds the plane support of the underlying field.
    """
    if n != 2:
        raise DomainError("reconstruction is implemented for n = 2")
    _check_a(a)
    etas = np.atleast_2d(np.asarray(etas, dtype=float))
    if np.any(etas[:, -1] >= a):
        raise DomainError("reconstruction points must lie inside the cap")
    if support_radius is None:
        support_radius = plane_support_radius(a, a - 0.05)
    profile = sphere_to_profile(data, a)

    def signed_profile(theta, ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        out = np.empty(ts.size)
        pos = ts >= 0.0
        if np.any(pos):
            out[pos] = np.asarray(profile(theta, ts[pos]), dtype=float)
        if np.any(~pos):
            out[~pos] = np.asarray(profile(-theta, -ts[~pos]), dtype=float)
        return out

    inverter = RampInverter(signed_profile, support_radius, n_angles=n_angles, n_t=n_t)
    plane_pts = stereo_to_plane(etas, a)
    g_vals = inverter(plane_pts)
    gap = a - etas[:, -1]
    weight = (a + 1.0) ** (n - 1) * (1.0 - a * etas[:, -1]) / gap**n
    return weight * g_vals


def norm_identity_sides(identity: str, f: ScalarField, a: float, p: float = 1.0,
                        lam: float = 0.0, lat: int = DEFAULT_LAT) -> tuple[float, float]:
    """Evaluate both sides of a weighted-norm or measure identity.

    identity one of:
      "plane_norm":   int |u_a f|^p P^lam dx
                    = (a+1)^(p - lam + n(1-p)) *
                      int_cap |f|^p (a - s)^(lam - 1 + n(p-1)) (1 - a s)^(1-p) d eta
      "plane_mass":   int (u_a f) P dx = int_cap f d eta
      "half_norm":    a = 0, lam = 0 case with weight |s|^(n+1-np)
    """
    from .quadrature import cap_rule

    if f.domain != CAP:
        raise DomainError("norm identities are stated for cap fields")
    n = f.n
    u = push_to_plane(f, a)
    radius = u.support_radius

    def plane_integral(weight_fn):
        return _integrate_plane(weight_fn, n, radius, lat)

    cap = cap_rule(n, a, max(lat, 96))
    s = cap.points[:, -1]
    fvals = np.abs(f(cap.points))

    if identity == "plane_mass":
        lhs = plane_integral(lambda x: u(x) * stereo_factors(x, a)[0])
        rhs = float(np.dot(cap.weights, f(cap.points)))
        return lhs, rhs
    if identity == "plane_norm":
        lhs = plane_integral(lambda x: np.abs(u(x)) ** p * stereo_factors(x, a)[0] ** lam)
        rhs_w = (a - s) ** (lam - 1.0 + n * (p - 1.0)) * (1.0 - a * s) ** (1.0 - p)
        rhs = (a + 1.0) ** (p - lam + n * (1.0 - p)) * float(
            np.dot(cap.weights, fvals**p * rhs_w)
        )
        return lhs, rhs
    if identity == "half_norm":
        if abs(a) > 1e-12:
            raise DomainError("the half-sphere norm identity is the a = 0 case")
        lhs = plane_integral(lambda x: np.abs(u(x)) ** p)
        rhs = float(np.dot(cap.weights, fvals**p * np.abs(s) ** (n * p - n - 1.0)))
        return lhs, rhs
    raise DomainError(f"unknown identity {identity!r}")


def radon_product_identity(g: ScalarField, lat: int = DEFAULT_LAT,
                           t_nodes: int = 192) -> tuple[float, float]:
    """Both sides of the product-measure Radon identity:

    int over (directions x R) of (Rg)(theta, t) (1+t^2)^(-n/2) d*theta dt
      = int g(x) (1+|x|^2)^(-1/2) dx.
    """
    from .quadrature import segment_nodes, sphere_rule

    n = g.n
    r = g.support_radius
    dir_rule = sphere_rule(n - 1, 32)
    t, wt = segment_nodes(-r, r, t_nodes)
    lhs = 0.0
    for theta, wd in zip(dir_rule.points, dir_rule.weights / sphere_area(n - 1)):
        prof = np.array([radon(g, theta, float(ti)) for ti in t])
        lhs += wd * float(np.dot(wt, prof / (1.0 + t**2) ** (n / 2.0)))
    rhs = _integrate_plane(
        lambda x: g(x) / np.sqrt(1.0 + np.sum(x * x, axis=-1)), n, r, lat
    )
    return lhs, rhs


def _integrate_plane(fn, n: int, radius: float, lat: int) -> float:
    """Polar-coordinate integral of fn over the ball of the given radius."""
    from .quadrature import geometric_breaks, paneled_nodes, sphere_rule

    rr, wr = paneled_nodes(geometric_breaks(0.0, radius), max(lat // 2, 32))
    dirs = sphere_rule(n - 1, max(lat // 2, 24))
    pts = rr[:, None, None] * dirs.points[None, :, :]
    vals = np.asarray(fn(pts.reshape(-1, n)), dtype=float).reshape(rr.size, -1)
    radial = vals @ dirs.weights
    return float(np.dot(wr * rr ** (n - 1), radial))


def plane_measure_identity(g: ScalarField, a: float, lat: int = DEFAULT_LAT) -> tuple[float, float]:
    """Both sides of int g dx = int_cap g(pi^{-1}(eta)) w(eta) d eta."""
    from .quadrature import cap_rule

    _check_a(a)
    n = g.n
    lhs = _integrate_plane(g, n, g.support_radius, lat)
    cap = cap_rule(n, a, max(lat, 128))
    pts = cap.points
    gap = a - pts[:, -1]
    x = (a + 1.0) * pts[:, :-1] / gap[:, None]
    rhs = float(np.dot(cap.weights, np.asarray(g(x), dtype=float) * cap_weight(pts, a)))
    return lhs, rhs


def cap_measure_identity(f: ScalarField, a: float, lat: int = DEFAULT_LAT) -> tuple[float, float]:
    """Both sides of int_cap f d eta = int f(pi(x)) / (w o pi)(x) dx."""
    from .quadrature import cap_rule

    if f.domain != CAP:
        raise DomainError("cap measure identity needs a cap field")
    if f.margin <= 0.0:
        raise DomainError("needs a margin so the plane integral has finite support")
    n = f.n
    cap = cap_rule(n, a, max(lat, 128))
    lhs = float(np.dot(cap.weights, f(cap.points)))
    radius = plane_support_radius(a, a - f.margin)

    def integrand(x):
        _, _, _, w_pi = stereo_factors(x, a)
        return np.asarray(f(stereo_to_sphere(x, a)), dtype=float) / w_pi

    rhs = _integrate_plane(integrand, n, radius, lat)
    return lhs, rhs
