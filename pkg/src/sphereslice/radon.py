"""Hyperplane Radon transform on R^n, its analytic family, and inverses.

Hyperplanes are pairs (theta, t) with x . theta = t and the identification
(theta, t) ~ (-theta, -t).  Compact support of the integrand is required
throughout and is taken from the field's declared support radius.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import cosine_gamma, sphere_area
from .errors import DomainError, RangeError
from .fields import PLANE, ScalarField
from .geometry import orthonormal_basis
from .quadrature import (
    circle_directions,
    geometric_breaks,
    paneled_nodes,
    segment_nodes,
    singular_endpoint_panels,
)


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane {x : x . theta = t} with canonical orientation."""

    theta: np.ndarray
    t: float

    @staticmethod
    def make(theta: np.ndarray, t: float) -> "Hyperplane":
        theta = np.asarray(theta, dtype=float)
        norm = np.linalg.norm(theta)
        if abs(norm - 1.0) > 1e-10:
            raise DomainError("hyperplane normal must be a unit vector")
        for c in theta:
            if c != 0.0:
                if c < 0.0:
                    theta, t = -theta, -t
                break
        return Hyperplane(theta, float(t))


def _support_radius(g) -> float:
    if isinstance(g, ScalarField):
        if g.domain != PLANE:
            raise DomainError("the Radon transform acts on plane fields")
        if g.support_radius is None:
            raise DomainError("the Radon transform needs a declared support radius")
        return g.support_radius
    raise DomainError("pass a plane ScalarField with compact support")


def radon(g: ScalarField, theta: np.ndarray, t: float, nodes: int = 32) -> float:
    """Integral of g over the hyperplane x . theta = t.

    n = 2 integrates along the chord of the support disk; n = 3 uses a polar
    rule on the chord disk.  Chord and radius integrations use panels growing
    geometrically away from the origin, so fields concentrated near the
    origin of a large support disk stay resolved.
    """
    r = _support_radius(g)
    theta = np.asarray(theta, dtype=float)
    n = theta.size
    chord2 = r * r - t * t
    if chord2 <= 0.0:
        return 0.0
    chord = math.sqrt(chord2)
    basis = orthonormal_basis(theta)
    if n == 2:
        u, w = paneled_nodes(geometric_breaks(-chord, chord), nodes)
        pts = t * theta[None, :] + u[:, None] * basis[:, 0][None, :]
        return float(np.dot(w, g(pts)))
    if n == 3:
        rad, wr = paneled_nodes(geometric_breaks(0.0, chord), nodes)
        dirs, wphi = circle_directions(2 * nodes)
        planar = dirs @ basis.T  # (M, 3)
        pts = t * theta[None, None, :] + rad[:, None, None] * planar[None, :, :]
        w = (rad * wr)[:, None] * wphi[None, :]
        return float(np.sum(w * g(pts.reshape(-1, 3)).reshape(rad.size, -1)))
    raise DomainError(f"radon is implemented for n in {{2, 3}}, got n={n}")


def radon_plane(g: ScalarField, plane: Hyperplane, nodes: int = 96) -> float:
    return radon(g, plane.theta, plane.t, nodes=nodes)


def radial_radon(g0, t: float, n: int, cutoff: float | None, nodes: int = 192) -> float:
    """Radon profile of a radial function g(x) = g0(|x|).

    Computes area(S^{n-2}) * int_{|t|}^{cutoff} g0(r) (r^2 - t^2)^((n-3)/2) r dr
    through the substitution w = sqrt(r^2 - t^2), which removes the n = 2
    endpoint singularity exactly.  cutoff = None integrates the tail through a
    rational stretching of [0, 1).
    """
    t = abs(float(t))
    if cutoff is not None:
        if cutoff <= t:
            return 0.0
        w_hi = math.sqrt(cutoff * cutoff - t * t)
        w, wt = paneled_nodes(geometric_breaks(0.0, w_hi), min(nodes, 48))
        vals = np.asarray(g0(np.sqrt(t * t + w * w)), dtype=float)
        return sphere_area(n - 2) * float(np.dot(wt, vals * w ** (n - 2)))
    scale = max(1.0, t)
    z, wz = segment_nodes(0.0, 1.0, nodes)
    w = scale * z / (1.0 - z)
    jac = scale / (1.0 - z) ** 2
    vals = np.asarray(g0(np.sqrt(t * t + w * w)), dtype=float)
    return sphere_area(n - 2) * float(np.dot(wz, vals * w ** (n - 2) * jac))


def radon_radial_field(g: ScalarField, t: float, nodes: int = 192) -> float:
    """radial_radon applied to a radial plane field via its profile."""
    r = _support_radius(g)
    n = g.n

    def profile(rr):
        rr = np.asarray(rr, dtype=float)
        pts = np.zeros(rr.shape + (n,))
        pts[..., 0] = rr
        return g(pts)

    return radial_radon(profile, t, n, cutoff=r, nodes=nodes)


def semyanistyi(g: ScalarField, theta: np.ndarray, t: float, lam: float,
                nodes: int = 32, radon_nodes: int = 32) -> float:
    """Fractional plane integral gamma(n, lam) * int g(x) |x . theta - t|^lam dx.

    Reduces to a 1-D singular pairing against the Radon profile of g; the
    kernel factor is absorbed into one-sided weighted rules around y = t.
    As lam -> -1 the value approaches d_n times the Radon transform.
    """
    if not -1.0 < lam < 1.0 or lam == 0.0:
        raise RangeError(f"fractional order must lie in (-1, 0) or (0, 1), got {lam}")
    r = _support_radius(g)
    theta = np.asarray(theta, dtype=float)
    n = theta.size
    if -r <= t <= r:
        pieces = []
        if t > -r:
            pieces.append(singular_endpoint_panels(-r, t, t, lam, nodes))
        if t < r:
            pieces.append(singular_endpoint_panels(t, r, t, lam, nodes))
    else:  # kernel is smooth over the support
        y, w = paneled_nodes(geometric_breaks(-r, r, origin=t), nodes)
        pieces = [(y, w * np.abs(y - t) ** lam)]
    total = 0.0
    for y, w in pieces:
        profile = np.array([radon(g, theta, float(yi), nodes=radon_nodes) for yi in y])
        total += float(np.dot(w, profile))
    return cosine_gamma(n, lam) * total


def ramp_kernel(n_t: int, dt: float) -> np.ndarray:
    """Band-limited ramp filter sampled in the spatial domain.

    K(j dt) with K(t) = (1/(2 pi)) int_{-W}^{W} |s| e^{ist} ds and the cutoff
    W = pi/dt at the grid Nyquist: K(0) = pi/(2 dt^2), K odd j = -2/(pi j^2 dt^2),
    K even j = 0.  Sampling in the spatial domain keeps the low-frequency
    response exact, which the plain discrete |s| multiplier does not.
    """
    j = np.arange(-(n_t - 1), n_t)
    kern = np.zeros(j.size)
    kern[j == 0] = np.pi / (2.0 * dt * dt)
    odd = j % 2 != 0
    kern[odd] = -2.0 / (np.pi * (j[odd] * dt) ** 2)
    return kern


class RampInverter:
    """Filtered backprojection for even n = 2 from profile data on (theta, t).

    Profiles are sampled on a uniform t grid, convolved with the band-limited
    ramp kernel (cutoff at the grid Nyquist), and backprojected with the
    trapezoid rule over a half turn of angles (profiles are even under
    (theta, t) -> (-theta, -t)).  Filtered profiles are precomputed once and
    shared read-only across evaluation points.
    """

    def __init__(self, data, radius: float, n_angles: int = 400, n_t: int = 512):
        self.radius = float(radius)
        ang = np.pi * (np.arange(n_angles) + 0.5) / n_angles
        self.thetas = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        pad = 1.25
        self.t_grid = np.linspace(-pad * radius, pad * radius, n_t)
        dt = self.t_grid[1] - self.t_grid[0]
        prof = np.empty((n_angles, n_t))
        for m, th in enumerate(self.thetas):
            prof[m] = data(th, self.t_grid)
        kern = ramp_kernel(n_t, dt)
        filtered = np.empty_like(prof)
        for m in range(n_angles):
            filtered[m] = np.convolve(prof[m], kern, mode="valid")
        # Q(t) = int |s| phat(s) e^{ist} ds = 2 pi (K * p)(t) dt
        self.filtered = 2.0 * np.pi * dt * filtered
        self._dphi = np.pi / n_angles

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        acc = np.zeros(x.shape[0])
        for m, th in enumerate(self.thetas):
            u = x @ th
            acc += np.interp(u, self.t_grid, self.filtered[m], left=0.0, right=0.0)
        # full-circle angle integral = twice the computed half turn
        return acc * 2.0 * self._dphi / (8.0 * np.pi**2)


@lru_cache(maxsize=8)
def _sphere_dirs(n: int, lat: int):
    from .quadrature import sphere_rule

    rule = sphere_rule(n - 1, lat)
    return rule.points, rule.weights / sphere_area(n - 1)


def radon_invert_odd(data, x: np.ndarray, n: int, radius: float,
                     lat: int = 32, rel_ts: tuple[float, ...] = (0.04, 0.02, 0.01)) -> float:
    """Odd-n inversion via the derivative of the plane means through x.

    Evaluates pi^((1-n)/2) (-(1/2t) d/dt)^((n-1)/2) of
    m(t) = mean over directions of data(theta, t + x . theta), extrapolating
    t -> 0 linearly from evaluations at rel_ts * radius.
    """
    if n % 2 == 0:
        raise DomainError("odd-dimension inversion requires odd n")
    x = np.asarray(x, dtype=float)
    dirs, wdirs = _sphere_dirs(n, lat)
    t_max = 2.0 * max(rel_ts) * radius
    tau_grid = np.linspace(0.0, t_max**2, 65)
    t_grid = np.sqrt(tau_grid)
    offsets = dirs @ x
    m_vals = np.empty(t_grid.size)
    for i, t in enumerate(t_grid):
        m_vals[i] = float(np.dot(wdirs, data(dirs, t + offsets)))
    from scipy.interpolate import CubicSpline

    spline = CubicSpline(tau_grid, m_vals)
    order = (n - 1) // 2
    deriv = spline.derivative(order)
    const = math.pi ** ((1 - n) / 2.0) * (-1.0) ** order
    ts = sorted(rel_ts)
    v1 = const * float(deriv((ts[0] * radius) ** 2))
    v2 = const * float(deriv((ts[1] * radius) ** 2))
    d1, d2 = ts[0] * radius, ts[1] * radius
    return (d2 * v1 - d1 * v2) / (d2 - d1)


def radon_invert(data, x: np.ndarray, n: int, radius: float, **kw) -> float:
    """Dispatch to the odd-n derivative formula or the even-n ramp filter."""
    if n % 2 == 1:
        return radon_invert_odd(data, x, n, radius, **kw)
    if n != 2:
        raise DomainError("even-dimension inversion is implemented for n = 2")
    inv = RampInverter(lambda th, ts: np.asarray([data(th, float(t)) for t in np.atleast_1d(ts)]),
                       radius)
    return float(inv(np.asarray(x, dtype=float)[None, :])[0])
