"""Forward transforms over hyperplane sections of the sphere.

For a height parameter a in (-1, 1] and a direction xi, the slice

    gamma_a(xi) = {eta in S^n : xi . eta = a * xi_last}

is the (n-1)-sphere cut by the hyperplane through the interior point
(0, ..., 0, a).  slice_complete integrates over the whole slice,
slice_truncated only over its part below the parallel eta_last = a.  The
cosine families replace the sharp section by the kernel |xi . eta - a xi_last|^lam
and recover the sharp transforms in the limit lam -> -1.
"""

import numpy as np

from .constants import cosine_gamma, sphere_area
from .errors import DomainError, RangeError
from .fields import CAP, ScalarField
from .sphere import DEFAULT_LAT, kernel_pairing, spherical_mean, subsphere_nodes


def slice_geometry(xi: np.ndarray, a: float) -> tuple[np.ndarray, float]:
    """Center and radius of gamma_a(xi): ((a xi_last) xi, sqrt(1 - a^2 xi_last^2))."""
    xi = np.asarray(xi, dtype=float)
    h = a * xi[-1]
    return h * xi, float(np.sqrt(max(0.0, 1.0 - h * h)))


def funk(f, xi: np.ndarray, lat: int = DEFAULT_LAT) -> float:
    """Normalized integral of f over the great subsphere orthogonal to xi."""
    return spherical_mean(f, xi, 0.0, lat=lat)


def slice_complete(f, xi: np.ndarray, a: float, lat: int = DEFAULT_LAT) -> float:
    """Surface integral of f over the complete slice gamma_a(xi).

    Equals area(S^{n-1}) (1 - a^2 xi_last^2)^((n-1)/2) mean(f; xi, a xi_last)
    and is even in xi; the computation canonicalizes the sign of xi so the
    evenness holds exactly.
    """
    xi = np.asarray(xi, dtype=float)
    if not -1.0 < a <= 1.0:
        raise DomainError(f"slice height must lie in (-1, 1], got {a}")
    if xi[-1] < 0.0:
        xi = -xi
    offset = a * xi[-1]
    if 1.0 - offset * offset <= 1e-28:
        raise DomainError("slice degenerates to a point (a = 1 at a pole)")
    pts, w, _ = subsphere_nodes(xi, offset, lat=lat)
    return float(np.dot(w, f(pts)))


def slice_truncated(f, xi: np.ndarray, a: float, lat: int = DEFAULT_LAT) -> float:
    """Integral of f over the truncated slice gamma_a(xi) cut to {eta_last < a}.

    f must be declared on the cap {eta_last < a}; the value equals the
    complete-slice transform of the zero-extension of f, with the crossing of
    the cap boundary handled analytically.
    """
    xi = np.asarray(xi, dtype=float)
    if xi[-1] < 0.0:
        raise DomainError("truncated slices are labeled by xi with xi_last >= 0")
    if isinstance(f, ScalarField):
        if f.domain != CAP:
            raise DomainError("slice_truncated expects a field declared on a cap")
        if f.cap_a is not None and abs(f.cap_a - a) > 1e-12:
            raise DomainError(f"field cap height {f.cap_a} does not match a={a}")
    if not -1.0 < a <= 1.0:
        raise DomainError(f"slice height must lie in (-1, 1], got {a}")
    offset = a * xi[-1]
    if 1.0 - offset * offset <= 1e-28:
        raise DomainError("slice degenerates to a point (a = 1 at a pole)")
    pts, w, _ = subsphere_nodes(xi, offset, lat=lat, cap_a=a)
    if pts.shape[0] == 0:
        return 0.0
    return float(np.dot(w, f(pts)))


def _check_cosine_exponent(lam: float) -> None:
    if not -1.0 < lam < 1.0 or lam == 0.0:
        raise RangeError(
            f"cosine exponent must lie in (-1, 0) or (0, 1), got {lam}"
        )


def cosine_transform(f, xi: np.ndarray, lam: float, lat: int = DEFAULT_LAT) -> float:
    """Normalized cosine transform with kernel |xi . eta|^lam (measure d eta / area)."""
    _check_cosine_exponent(lam)
    xi = np.asarray(xi, dtype=float)
    n = xi.size - 1
    pairing = kernel_pairing(
        f, lambda t: np.abs(t) ** lam, xi, lat=lat, singularity=(0.0, lam)
    )
    return cosine_gamma(n, lam) * pairing / sphere_area(n)


def shifted_cosine(f, xi: np.ndarray, lam: float, a: float, lat: int = DEFAULT_LAT) -> float:
    """Cosine transform with the shifted kernel |xi . (eta - a e_last)|^lam.

    Uses the plain surface measure (no normalization), so the a = 0 case is
    area(S^n) times the normalized cosine transform.  Singular point of the
    latitude integral: t = a xi_last.
    """
    _check_cosine_exponent(lam)
    xi = np.asarray(xi, dtype=float)
    n = xi.size - 1
    x0 = a * xi[-1]
    if abs(x0) >= 1.0:
        raise DomainError("kernel center |a xi_last| must be < 1")
    pairing = kernel_pairing(
        f, lambda t: np.abs(t - x0) ** lam, xi, lat=lat, singularity=(x0, lam)
    )
    return cosine_gamma(n, lam) * pairing


def cap_cosine(f, xi: np.ndarray, lam: float, a: float, lat: int = DEFAULT_LAT) -> float:
    """Shifted cosine transform of a cap field via its zero-extension.

    Cap fields are passed through directly; the kernel pairing integrates
    their zero-extension with the cap crossing resolved analytically.
    """
    xi = np.asarray(xi, dtype=float)
    if xi[-1] < 0.0:
        raise DomainError("cap cosine transforms are labeled by xi with xi_last >= 0")
    if isinstance(f, ScalarField) and f.domain != CAP:
        raise DomainError("cap_cosine expects a field declared on a cap")
    return shifted_cosine(f, xi, lam, a, lat=lat)
