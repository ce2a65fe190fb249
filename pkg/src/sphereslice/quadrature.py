"""Quadrature rules: sphere product rules and singularity-aware 1-D rules.

Latitude integration uses Gauss-Jacobi nodes with the surface weight
(1-t^2)^((n-2)/2) built into the weights, so constants and polynomials are
integrated to machine precision for every sphere dimension.  Kernels with an
interior algebraic singularity |t-x0|^lam are integrated with two one-sided
Jacobi rules whose weight functions absorb the singular factor exactly.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .constants import sphere_area
from .errors import DomainError, RangeError


@lru_cache(maxsize=256)
def gauss_legendre(num: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(num)
    return x, w


@lru_cache(maxsize=256)
def gauss_jacobi(num: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_jacobi(num, alpha, beta)
    return x, w


def segment_nodes(lo: float, hi: float, num: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes mapped to [lo, hi]."""
    x, w = gauss_legendre(num)
    h = 0.5 * (hi - lo)
    return lo + h * (x + 1.0), h * w


def weighted_segment_nodes(
    lo: float, hi: float, num: int, left_exp: float = 0.0, right_exp: float = 0.0
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights integrating (t-lo)^left (hi-t)^right g(t) over [lo, hi].

    The algebraic endpoint factors are treated as the Jacobi weight, so the
    returned weights already include them; only the smooth remainder g is
    evaluated at the nodes.  Exponents must exceed -1.
    """
    if left_exp <= -1.0 or right_exp <= -1.0:
        raise RangeError("endpoint exponents must be > -1 for integrability")
    if not hi > lo:
        raise DomainError("empty integration interval")
    if left_exp == 0.0 and right_exp == 0.0:
        return segment_nodes(lo, hi, num)
    x, w = gauss_jacobi(num, right_exp, left_exp)
    h = hi - lo
    t = lo + h * (x + 1.0) / 2.0
    scale = (h / 2.0) ** (1.0 + left_exp + right_exp)
    return t, scale * w


def geometric_breaks(lo: float, hi: float, origin: float = 0.0, scale: float = 1.0) -> list[float]:
    """Panel breakpoints on [lo, hi] refined geometrically toward origin.

    Distances origin +- scale * 2^k are inserted while they fall inside the
    interval; integrands that vary on the given scale near origin and flatten
    out away from it are then resolved by per-panel Gauss rules.
    """
    pts = {float(lo), float(hi)}
    if lo < origin < hi:
        pts.add(float(origin))
    d = scale
    for _ in range(64):
        if origin - d <= lo and origin + d >= hi:
            break
        for s in (origin - d, origin + d):
            if lo < s < hi:
                pts.add(float(s))
        d *= 2.0
    return sorted(pts)


def paneled_nodes(breaks: list[float], num: int) -> tuple[np.ndarray, np.ndarray]:
    """Concatenated Gauss-Legendre rules over consecutive panels."""
    ts, ws = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if hi - lo <= 0.0:
            continue
        t, w = segment_nodes(lo, hi, num)
        ts.append(t)
        ws.append(w)
    return np.concatenate(ts), np.concatenate(ws)


def singular_endpoint_panels(
    lo: float, hi: float, x0: float, lam: float, num: int, scale: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for int_lo^hi |t-x0|^lam g(t) dt with x0 = lo or x0 = hi.

    The panel adjacent to the singular endpoint absorbs the kernel into a
    Jacobi weight; the remaining panels grow geometrically away from it and
    carry the (there smooth) kernel explicitly in the weights.
    """
    if not (abs(x0 - lo) < 1e-15 or abs(x0 - hi) < 1e-15):
        raise DomainError("singular point must be an endpoint of the interval")
    at_left = abs(x0 - lo) < 1e-15
    length = hi - lo
    first = min(length, scale)
    if at_left:
        t0, w0 = weighted_segment_nodes(lo, lo + first, num, left_exp=lam)
        rest = geometric_breaks(lo + first, hi, origin=lo, scale=scale) if lo + first < hi else []
    else:
        t0, w0 = weighted_segment_nodes(hi - first, hi, num, right_exp=lam)
        rest = geometric_breaks(lo, hi - first, origin=hi, scale=scale) if hi - first > lo else []
    if len(rest) >= 2:
        t1, w1 = paneled_nodes(rest, num)
        w1 = w1 * np.abs(t1 - x0) ** lam
        return np.concatenate([t0, t1]), np.concatenate([w0, w1])
    return t0, w0


def latitude_rule(n: int, num: int) -> tuple[np.ndarray, np.ndarray]:
    """Latitude nodes on [-1, 1] with weight (1-t^2)^((n-2)/2) absorbed."""
    m = (n - 2) / 2.0
    if m == 0.0:
        return gauss_legendre(num)
    x, w = gauss_jacobi(num, m, m)
    return x, w


def latitude_singular_rule(
    n: int, x0: float, lam: float, num: int
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for int_{-1}^{1} |t-x0|^lam (1-t^2)^((n-2)/2) g(t) dt.

    Splits at the declared singular point x0 and uses one-sided Jacobi rules
    that absorb both the singular kernel and the nearest latitude endpoint
    factor; the remaining smooth endpoint factor is folded into the weights
    by evaluation.
    """
    if not -1.0 < x0 < 1.0:
        raise DomainError(f"singular point must be interior, got {x0}")
    if lam <= -1.0:
        raise RangeError(f"kernel exponent must be > -1, got {lam}")
    m = (n - 2) / 2.0
    t_lo, w_lo = weighted_segment_nodes(-1.0, x0, num, left_exp=m, right_exp=lam)
    w_lo = w_lo * (1.0 - t_lo) ** m
    t_hi, w_hi = weighted_segment_nodes(x0, 1.0, num, left_exp=lam, right_exp=m)
    w_hi = w_hi * (1.0 + t_hi) ** m
    return np.concatenate([t_lo, t_hi]), np.concatenate([w_lo, w_hi])


@dataclass(frozen=True)
class SphereRule:
    """Product quadrature on the unit n-sphere in R^{n+1}.

    points has shape (P, n+1) and weights (P,); summing weights reproduces
    the total surface area.
    """

    n: int
    points: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


def circle_directions(num: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform angles on S^1: directions (num, 2) and trapezoid weights.

    Angles carry a quarter-step offset so that no node falls on the vertical
    axis directions; slices through a pole then never place a node exactly on
    the pole, where hard support gates would drop finite quadrature weight.
    The offset keeps nodes antipodally paired for even num.
    """
    ang = 2.0 * np.pi * (np.arange(num) + 0.25) / num
    dirs = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return dirs, np.full(num, 2.0 * np.pi / num)


@lru_cache(maxsize=64)
def sphere_rule(n: int, lat: int) -> SphereRule:
    """Recursive latitude x subsphere rule; lat latitude nodes, 2*lat angles."""
    if n < 1:
        raise DomainError("sphere rule needs n >= 1")
    if n == 1:
        dirs, w = circle_directions(2 * lat)
        return SphereRule(1, dirs, w)
    sub = sphere_rule(n - 1, lat)
    t, wt = latitude_rule(n, lat)
    s = np.sqrt(1.0 - t**2)
    pts = np.concatenate(
        [
            s[:, None, None] * sub.points[None, :, :],
            np.broadcast_to(t[:, None, None], (t.size, sub.points.shape[0], 1)),
        ],
        axis=2,
    ).reshape(-1, n + 1)
    w = (wt[:, None] * sub.weights[None, :]).reshape(-1)
    return SphereRule(n, pts, w)


@lru_cache(maxsize=64)
def cap_rule(n: int, a: float, lat: int) -> SphereRule:
    """Product rule on the cap {eta_last < a} via the colatitude substitution.

    Uses Gauss-Legendre in the colatitude theta on [arccos(a), pi], where the
    integrand sin^{n-1}(theta) * f is analytic for smooth f.
    """
    if not -1.0 < a <= 1.0:
        raise DomainError(f"cap height must lie in (-1, 1], got {a}")
    theta, w = segment_nodes(float(np.arccos(a)), np.pi, lat)
    t = np.cos(theta)
    wt = w * np.sin(theta) ** (n - 1)
    sub = sphere_rule(n - 1, lat) if n > 1 else SphereRule(0, np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]))
    s = np.sqrt(np.clip(1.0 - t**2, 0.0, None))
    pts = np.concatenate(
        [
            s[:, None, None] * sub.points[None, :, :],
            np.broadcast_to(t[:, None, None], (t.size, sub.points.shape[0], 1)),
        ],
        axis=2,
    ).reshape(-1, n + 1)
    wgt = (wt[:, None] * sub.weights[None, :]).reshape(-1)
    return SphereRule(n, pts, wgt)


def check_rule(n: int, lat: int, rtol: float = 1e-12) -> float:
    """Relative error of the rule on the constant field (area check)."""
    rule = sphere_rule(n, lat)
    err = abs(float(np.sum(rule.weights)) - sphere_area(n)) / sphere_area(n)
    if err > rtol:
        raise RangeError(f"sphere rule failed the area check: rel err {err:.3e}")
    return err
