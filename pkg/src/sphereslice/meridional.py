"""Conjugation of the complete slice transform to the Funk transform.

Two latitude reparameterizations tie the off-center slices to central ones
(|a| < 1 throughout):

    shift:  (psi, u) -> (psi, v),  v = (u - a) / (1 - a u)
    scale:  (phi, s) -> (phi, t),  t = s sqrt(1 - a^2) / sqrt(1 - a^2 s^2)

Conjugating with the weights below turns the slice transform at height a into
the Funk transform, which gives a factorization, a characterization of the
kernel and of the symmetric class, and a full reconstruction pipeline.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .constants import sphere_area
from .errors import DomainError
from .fields import SampledSphereField, ScalarField, grid_colatitudes, grid_longitudes, sphere_field
from .quadrature import gauss_legendre, segment_nodes
from .sphere import DEFAULT_LAT, spherical_mean_profile
from .transforms import funk, slice_complete


def _check_height(a: float) -> None:
    if not -1.0 < a < 1.0:
        raise DomainError(f"meridional maps need |a| < 1, got a={a}")


def latitude_shift(eta: np.ndarray, a: float, inverse: bool = False) -> np.ndarray:
    """Move the parallel u = a to the equator (inverse: equator back to u = a).

    Forward: (psi, u) -> (psi, (u - a)/(1 - a u)); the poles stay fixed.
    Vectorized over leading axes.
    """
    _check_height(a)
    eta = np.asarray(eta, dtype=float)
    s = -a if inverse else a
    u = eta[..., -1:]
    denom = 1.0 - s * u
    out = np.empty_like(eta)
    out[..., :-1] = math.sqrt(1.0 - a * a) * eta[..., :-1] / denom
    out[..., -1:] = (u - s) / denom
    return out


def latitude_scale(xi: np.ndarray, a: float, inverse: bool = False) -> np.ndarray:
    """Latitude rescaling s -> s sqrt(1-a^2)/sqrt(1-a^2 s^2); fixes equator and poles."""
    _check_height(a)
    xi = np.asarray(xi, dtype=float)
    s = xi[..., -1:]
    if inverse:
        denom = np.sqrt(1.0 - a * a + a * a * s * s)
        out = np.empty_like(xi)
        out[..., :-1] = math.sqrt(1.0 - a * a) * xi[..., :-1] / denom
        out[..., -1:] = s / denom
        return out
    denom = np.sqrt(1.0 - a * a * s * s)
    out = np.empty_like(xi)
    out[..., :-1] = xi[..., :-1] / denom
    out[..., -1:] = math.sqrt(1.0 - a * a) * s / denom
    return out


def to_funk_input(f, n: int, a: float, inverse: bool = False) -> ScalarField:
    """Weighted pullback taking slice-transform inputs to Funk inputs.

    Forward: g(eta~) = f(shift^{-1}(eta~)) / (1 + a eta~_last)^(n-1).
    The inverse composes to the identity with the forward map.
    """
    _check_height(a)
    if inverse:

        def fn(pts):
            w = ((1.0 - a * a) / (1.0 - a * pts[..., -1])) ** (n - 1)
            return w * np.asarray(f(latitude_shift(pts, a, inverse=False)), dtype=float)

        return sphere_field(fn, n, name="from_funk_input")

    def fn(pts):
        w = (1.0 + a * pts[..., -1]) ** (n - 1)
        return np.asarray(f(latitude_shift(pts, a, inverse=True)), dtype=float) / w

    return sphere_field(fn, n, name="to_funk_input")


def from_funk_output(phi, n: int, a: float, inverse: bool = False) -> ScalarField:
    """Constant-weighted pushforward taking Funk outputs to slice outputs.

    Forward: Psi(xi) = area(S^{n-1}) (1-a^2)^((n-1)/2) phi(scale(xi)).
    """
    _check_height(a)
    const = sphere_area(n - 1) * (1.0 - a * a) ** ((n - 1) / 2.0)
    if inverse:

        def fn(pts):
            return np.asarray(phi(latitude_scale(pts, a, inverse=True)), dtype=float) / const

        return sphere_field(fn, n, name="to_funk_output")

    def fn(pts):
        return const * np.asarray(phi(latitude_scale(pts, a, inverse=False)), dtype=float)

    return sphere_field(fn, n, name="from_funk_output")


def slice_via_funk(f, xi: np.ndarray, a: float, lat: int = DEFAULT_LAT) -> float:
    """Evaluate the complete slice transform through its Funk factorization."""
    xi = np.asarray(xi, dtype=float)
    n = xi.size - 1
    g = to_funk_input(f, n, a)
    const = sphere_area(n - 1) * (1.0 - a * a) ** ((n - 1) / 2.0)
    return const * funk(g, latitude_scale(xi, a), lat=lat)


@dataclass(frozen=True)
class Reflection:
    """Image under the point reflection through (0, ..., 0, a) along chords."""

    eta_star: np.ndarray
    rho: np.ndarray


def reflect(eta: np.ndarray, a: float, n: int | None = None) -> Reflection:
    """Reflection eta -> eta* through the center height a, with its weight.

    In meridional coordinates psi* = -psi and
    u* = (2a - u(1 + a^2)) / (1 + a^2 - 2 u a); the weight is
    rho = ((1 + a^2 - 2 u a)/(1 - a^2))^(n-1) and satisfies rho(eta) rho(eta*) = 1.
    """
    _check_height(a)
    eta = np.asarray(eta, dtype=float)
    if n is None:
        n = eta.shape[-1] - 1
    u = eta[..., -1:]
    q = 1.0 + a * a - 2.0 * u * a
    star = np.empty_like(eta)
    star[..., :-1] = -(1.0 - a * a) / q * eta[..., :-1]
    star[..., -1:] = (2.0 * a - u * (1.0 + a * a)) / q
    rho = (q[..., 0] / (1.0 - a * a)) ** (n - 1)
    return Reflection(star, rho)


def symmetrize(f, n: int, a: float, sign: int) -> ScalarField:
    """Project f onto the symmetric class (sign=+1) or the kernel class (sign=-1).

    Conjugates the ordinary even/odd projector with the Funk-input maps.  The
    +1 output g satisfies g(eta) = rho(eta*) g(eta*) pointwise; the -1 output
    is annihilated by the complete slice transform at height a.
    """
    if sign not in (+1, -1):
        raise DomainError("sign must be +1 or -1")
    g = to_funk_input(f, n, a)

    def projected(pts):
        vals = np.asarray(g(pts), dtype=float)
        mirrored = np.asarray(g(-np.asarray(pts, dtype=float)), dtype=float)
        return 0.5 * (vals + sign * mirrored)

    return to_funk_input(sphere_field(projected, n), n, a, inverse=True)


def _funk_invert_const(n: int) -> float:
    # normalization fixed by exactness on constants
    return 2.0 * math.sqrt(math.pi) / (math.gamma((n - 1) / 2.0) * math.gamma(n / 2.0))


def funk_invert(
    phi,
    xi: np.ndarray,
    lat: int = DEFAULT_LAT,
    mean_nodes: int = 129,
    grid_nodes: int = 513,
    deltas: tuple[float, ...] = (0.08, 0.04, 0.02),
) -> float:
    """Invert the Funk transform at xi via the Abel chain in the radius variable.

    Builds the profile P(s) = mean(phi; xi, sqrt(1 - s^2)), forms the inner
    Abel integral, applies the iterated derivative with respect to tau = t^2
    (a cubic spline on a uniform tau grid supplies the derivatives), and
    extrapolates t -> 1 linearly from evaluations at t = 1 - delta.

    Only the even part of the data contributes; non-even phi reconstructs the
    even part of the underlying field.
    """
    xi = np.asarray(xi, dtype=float)
    n = xi.size - 1
    s_grid = np.linspace(0.0, 1.0, mean_nodes)
    heights = np.sqrt(np.clip(1.0 - s_grid**2, 0.0, None))
    profile = spherical_mean_profile(phi, xi, heights, lat=lat)
    prof_spline = CubicSpline(s_grid, profile, bc_type="natural")

    # inner(t) = C t^(2n-3) * int_0^(pi/2) P(t sin w) sin^(n-1) w cos^(n-2) w dw
    w_nodes, w_weights = segment_nodes(0.0, math.pi / 2.0, 64)
    sinw = np.sin(w_nodes)
    base = w_weights * sinw ** (n - 1) * np.cos(w_nodes) ** (n - 2)
    tau_grid = np.linspace(0.0, 1.0, grid_nodes)
    t_grid = np.sqrt(tau_grid)
    samples = prof_spline(t_grid[:, None] * sinw[None, :])
    inner = _funk_invert_const(n) * t_grid ** (2 * n - 3) * (samples @ base)
    inner_spline = CubicSpline(tau_grid, inner, bc_type="natural")
    deriv = inner_spline.derivative(n - 1)

    deltas = sorted(deltas)
    v1 = float(deriv((1.0 - deltas[0]) ** 2))
    v2 = float(deriv((1.0 - deltas[1]) ** 2))
    d1, d2 = deltas[0], deltas[1]
    return (d2 * v1 - d1 * v2) / (d2 - d1)


def funk_invert_odd(phi, xi: np.ndarray, lat: int = DEFAULT_LAT,
                    deltas: tuple[float, ...] = (0.08, 0.04, 0.02)) -> float:
    """Odd-dimension shortcut: iterated derivative of t^(n-2) P(t) at t -> 1."""
    xi = np.asarray(xi, dtype=float)
    n = xi.size - 1
    if n % 2 == 0:
        raise DomainError("the shortcut inversion needs odd sphere dimension")
    tau_grid = np.linspace(1e-12, 1.0, 513)
    t_grid = np.sqrt(tau_grid)
    heights = np.sqrt(np.clip(1.0 - t_grid**2, 0.0, None))
    profile = spherical_mean_profile(phi, xi, heights, lat=lat)
    vals = t_grid ** (n - 2) * profile
    spline = CubicSpline(tau_grid, vals, bc_type="natural")
    deriv = spline.derivative((n - 1) // 2)
    const = math.sqrt(math.pi) / math.gamma(n / 2.0)
    deltas = sorted(deltas)
    v1 = const * float(deriv((1.0 - deltas[0]) ** 2))
    v2 = const * float(deriv((1.0 - deltas[1]) ** 2))
    d1, d2 = deltas[0], deltas[1]
    return (d2 * v1 - d1 * v2) / (d2 - d1)


def tabulate_slice_transform(
    f, n: int, a: float, lat: int = DEFAULT_LAT, shape: tuple[int, int] = (96, 192)
) -> SampledSphereField:
    """Sample the complete slice transform on a lat-lon grid (n = 2 only).

    The returned interpolant plays the role of measured data for the
    reconstruction pipeline.
    """
    if n != 2:
        raise DomainError("tabulation is implemented for n = 2")
    thetas = grid_colatitudes(shape[0])
    phis = grid_longitudes(shape[1])
    vals = np.empty(shape)
    for i, th in enumerate(thetas):
        st, ct = math.sin(th), math.cos(th)
        for j, ph in enumerate(phis):
            xi = np.array([st * math.cos(ph), st * math.sin(ph), ct])
            vals[i, j] = slice_complete(f, xi, a, lat=lat)
    return SampledSphereField(vals, a=1.0)


def slice_reconstruct(
    data, eta: np.ndarray, a: float, lat: int = DEFAULT_LAT
) -> float:
    """Recover a symmetric field from its complete slice transform at one point.

    data must behave like the slice transform of the sought field (callable
    on sphere points, vectorized).  Pipeline: undo the output weight, invert
    the Funk transform, undo the input weight.
    """
    eta = np.asarray(eta, dtype=float)
    n = eta.size - 1
    _check_height(a)
    const = sphere_area(n - 1) * (1.0 - a * a) ** ((n - 1) / 2.0)

    def funk_side(pts):
        return np.asarray(data(latitude_scale(pts, a, inverse=True)), dtype=float) / const

    zeta = latitude_shift(eta, a)
    g_val = funk_invert(funk_side, zeta, lat=lat)
    weight = ((1.0 - a * a) / (1.0 - a * eta[-1])) ** (n - 1)
    return weight * g_val
