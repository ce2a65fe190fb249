"""Closed-form transforms of zonal fields: the 1-D oracles.

A zonal field depends only on the last coordinate, f(eta) = f0(eta_last).
Its transforms collapse to Abel-type integrals in one variable, which this
module evaluates with endpoint singularities removed analytically.  These
closed forms validate the generic quadrature pipelines.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import sphere_area
from .errors import DomainError
from .fields import ScalarField, cap_field, smooth_window
from .quadrature import segment_nodes, weighted_segment_nodes
from .radon import radial_radon


@dataclass(frozen=True)
class ZonalProfile:
    """Latitude profile f0 on [-1, a) with its cap height and dimension."""

    f0: Callable[[np.ndarray], np.ndarray]
    a: float
    n: int
    name: str = ""

    def field(self, margin: float = 0.0) -> ScalarField:
        return cap_field(
            lambda p: np.asarray(self.f0(p[..., -1]), dtype=float),
            self.n,
            self.a,
            margin=margin,
            name=self.name,
        )

    def weighted_mass(self, nodes: int = 256) -> float:
        """Quadrature value of int_{-1}^{a} |f0(t)| (1-t^2)^delta dt."""
        delta = (self.n - 2) / 2.0 if self.a < 1.0 else (self.n - 3) / 2.0
        hi = min(self.a, 1.0)
        if hi < 1.0:
            t, w = weighted_segment_nodes(-1.0, hi, nodes, left_exp=delta)
            vals = np.abs(np.asarray(self.f0(t), dtype=float)) * (1.0 - t) ** delta
        else:
            t, w = weighted_segment_nodes(-1.0, 1.0, nodes, left_exp=delta, right_exp=delta)
            vals = np.abs(np.asarray(self.f0(t), dtype=float))
        return float(np.dot(w, vals))

    def integrable(self, nodes: int = 256, rtol: float = 1e-3) -> bool:
        """Doubling-stability check of the weighted mass (divergence screen)."""
        coarse = self.weighted_mass(nodes)
        fine = self.weighted_mass(2 * nodes)
        if not (math.isfinite(coarse) and math.isfinite(fine)):
            return False
        return abs(fine - coarse) <= rtol * max(1.0, abs(fine))


def zonal_funk(f0, rho: float, n: int, nodes: int = 192) -> float:
    """Funk transform of a zonal field at subsphere radius rho = sqrt(1 - s^2).

    F0(rho) = c rho^(2-n) int_0^rho f0e(t) (rho^2 - t^2)^((n-3)/2) dt with
    c = 2 area(S^(n-2)) / area(S^(n-1)) and f0e the even part of the profile
    (odd profiles are annihilated).  The endpoint singularity at t = rho is
    removed by t = rho sin(w).
    """
    if rho <= 0.0:
        raise DomainError("zonal Funk formula needs rho > 0; use the generic path at poles")
    c = 2.0 * sphere_area(n - 2) / sphere_area(n - 1)
    w, wt = segment_nodes(0.0, math.pi / 2.0, nodes)
    t = rho * np.sin(w)
    even = 0.5 * (np.asarray(f0(t), dtype=float) + np.asarray(f0(-t), dtype=float))
    # substitution turns rho^(2-n) int f (rho^2-t^2)^((n-3)/2) dt into
    # int f(rho sin w) cos^(n-2) w dw
    kernel = np.cos(w) ** (n - 2)
    return c * float(np.dot(wt, even * kernel))


def zonal_slice0(f0, rho: float, n: int, nodes: int = 192) -> float:
    """Truncated slice transform at height a = 0 for a zonal field.

    F(rho) = (area(S^(n-2)) / rho^(n-2)) int_0^rho f0(-t) (rho^2-t^2)^((n-3)/2) dt,
    evaluated with the same sine substitution; the slice label satisfies
    rho = sqrt(1 - s^2).
    """
    if rho <= 0.0:
        raise DomainError("zonal slice formula needs rho > 0")
    w, wt = segment_nodes(0.0, math.pi / 2.0, nodes)
    t = rho * np.sin(w)
    vals = np.asarray(f0(-t), dtype=float)
    kernel = np.cos(w) ** (n - 2)
    return sphere_area(n - 2) * float(np.dot(wt, vals * kernel))


def zonal_slice1(f0, rho: float, n: int, nodes: int = 192) -> float:
    """Slice transform through the north pole (a = 1) for a zonal field.

    F(rho) = area(S^(n-2)) ((1-rho)/2)^((3-n)/2) *
             int_rho^1 f0(t) [(t - rho)(1 - t)]^((n-3)/2) dt,
    with rho = 2 s^2 - 1 for the slice labeled by s = xi_last.  Both endpoint
    singularities vanish under t = rho + (1-rho) sin^2(w).
    """
    if not -1.0 <= rho < 1.0:
        raise DomainError(f"zonal argument must lie in [-1, 1), got {rho}")
    w, wt = segment_nodes(0.0, math.pi / 2.0, nodes)
    sin2 = np.sin(w) ** 2
    t = rho + (1.0 - rho) * sin2
    # [(t-rho)(1-t)]^((n-3)/2) dt = (1-rho)^(n-2) [sin cos]^(n-2) * 2 dw
    kernel = 2.0 * (1.0 - rho) ** (n - 2) * (np.sin(w) * np.cos(w)) ** (n - 2)
    vals = np.asarray(f0(t), dtype=float)
    return (
        sphere_area(n - 2)
        * ((1.0 - rho) / 2.0) ** ((3 - n) / 2.0)
        * float(np.dot(wt, vals * kernel))
    )


def profile_to_radial(f0, a: float, n: int):
    """Radial profile of the plane pushforward of a zonal cap field.

    u0(r) = (a+1) P0^(n-1)(r) f0(Q0(r)) / D0(r) with the stereographic
    factors evaluated on the radius alone.
    """

    def u0(r):
        r = np.asarray(r, dtype=float)
        r2 = r * r
        d0 = math.sqrt(a + 1.0) * np.sqrt(r2 * (1.0 - a) + a + 1.0)
        denom = r2 + (a + 1.0) ** 2
        p0 = (a * (a + 1.0) + d0) / denom
        q0 = (a * r2 - (a + 1.0) * d0) / denom
        return (a + 1.0) * p0 ** (n - 1) * np.asarray(f0(q0), dtype=float) / d0

    return u0


def zonal_pipeline(f0, s: float, a: float, n: int, cutoff: float | None = None,
                   nodes: int = 256) -> float:
    """Truncated slice transform of a zonal field via the 1-D radial chain.

    Pushes the profile to a radial function on the plane, takes its radial
    Radon profile at t = (a+1) s / sqrt(1-s^2), and lifts back with the
    weight sqrt((1 - a^2 s^2)/(1 - s^2)).
    """
    if not 0.0 <= s < 1.0:
        raise DomainError(f"slice label must satisfy 0 <= s < 1, got {s}")
    u0 = profile_to_radial(f0, a, n)
    sin = math.sqrt(1.0 - s * s)
    t = (a + 1.0) * s / sin
    val = radial_radon(u0, t, n, cutoff=cutoff, nodes=nodes)
    return math.sqrt((1.0 - a * a * s * s) / (1.0 - s * s)) * val


def zonal_catalog(a: float, n: int, margin: float = 0.1) -> list[ZonalProfile]:
    """Profiles exercising parity, truncation, and boundary decay."""
    hi = a - margin
    c, h = 0.5 * (hi - 0.95), 0.5 * (hi + 0.95)
    return [
        ZonalProfile(lambda t: np.ones_like(np.asarray(t, dtype=float)), a, n, "one"),
        ZonalProfile(lambda t: np.asarray(t, dtype=float), a, n, "t"),
        ZonalProfile(lambda t: np.asarray(t, dtype=float) ** 2, a, n, "t2"),
        ZonalProfile(lambda t: 1.0 - np.asarray(t, dtype=float), a, n, "one_minus_t"),
        ZonalProfile(lambda t: smooth_window((np.asarray(t, dtype=float) - c) / h), a, n, "bump"),
    ]
