"""Scalar fields on the sphere, on caps, and on R^n, plus the test catalog.

A field wraps a vectorized evaluator together with domain metadata.  Calling
the field applies the declared support gate, so evaluations outside the
support return exactly 0.  Cap fields are always the zero-extension of their
restriction to {eta_last < a}; a positive margin means the field already
vanishes identically for eta_last >= a - margin, so the extension is smooth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError

SPHERE = "sphere"
CAP = "cap"
PLANE = "plane"


@dataclass(frozen=True)
class ScalarField:
    evaluate: Callable[[np.ndarray], np.ndarray]
    domain: str
    n: int
    cap_a: float | None = None
    margin: float = 0.0
    support_radius: float | None = None
    smooth: bool = True
    name: str = ""
    radial_breaks: tuple = field(default_factory=tuple)

    @property
    def point_dim(self) -> int:
        return self.n + 1 if self.domain in (SPHERE, CAP) else self.n

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        if pts.shape[-1] != self.point_dim:
            raise DomainError(
                f"field expects points of dimension {self.point_dim}, got {pts.shape[-1]}"
            )
        vals = np.asarray(self.evaluate(pts), dtype=float)
        if self.domain == CAP:
            vals = np.where(pts[..., -1] < self.cap_a, vals, 0.0)
        elif self.domain == PLANE and self.support_radius is not None:
            r2 = np.sum(pts * pts, axis=-1)
            vals = np.where(r2 <= self.support_radius**2, vals, 0.0)
        return vals


def sphere_field(fn, n, smooth=True, name="") -> ScalarField:
    return ScalarField(fn, SPHERE, n, smooth=smooth, name=name)


def cap_field(fn, n, a, margin=0.0, smooth=True, name="") -> ScalarField:
    if not -1.0 < a <= 1.0:
        raise DomainError(f"cap height must lie in (-1, 1], got {a}")
    return ScalarField(fn, CAP, n, cap_a=a, margin=margin, smooth=smooth, name=name)


def plane_field(fn, n, radius, smooth=True, name="", radial_breaks=()) -> ScalarField:
    return ScalarField(
        fn,
        PLANE,
        n,
        support_radius=float(radius),
        smooth=smooth,
        name=name,
        radial_breaks=tuple(radial_breaks),
    )


def as_zero_extension(f: ScalarField) -> ScalarField:
    """View a cap field as a field on the whole sphere (zero outside the cap)."""
    if f.domain != CAP:
        raise DomainError("zero extension applies to cap fields")
    a = f.cap_a

    def ext(pts):
        vals = np.asarray(f.evaluate(pts), dtype=float)
        return np.where(pts[..., -1] < a, vals, 0.0)

    return ScalarField(ext, SPHERE, f.n, smooth=f.smooth and f.margin > 0.0, name=f.name + "~")


def smooth_window(x: np.ndarray) -> np.ndarray:
    """C-infinity bump on (-1, 1), equal to 1 at 0 and identically 0 outside."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 1.0
    x2 = np.where(inside, x * x, 0.0)
    with np.errstate(divide="ignore", over="ignore"):
        vals = np.exp(1.0 - 1.0 / np.where(inside, 1.0 - x2, 1.0))
    return np.where(inside, vals, 0.0)


def latitude_bump(n: int, a: float, margin: float = 0.1, lo: float = -0.95,
                  modulated: bool = False, name: str = "") -> ScalarField:
    """Smooth zonal bump supported in lo <= eta_last <= a - margin.

    With modulated=True the bump is multiplied by (1 + 0.4 eta_1), which keeps
    the support but breaks the zonal symmetry.
    """
    hi = a - margin
    if hi <= lo:
        raise DomainError("empty support window for the latitude bump")
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)

    def fn(pts):
        w = smooth_window((pts[..., -1] - c) / h)
        if modulated:
            w = w * (1.0 + 0.4 * pts[..., 0])
        return w

    return cap_field(fn, n, a, margin=margin, name=name or f"bump(a={a})")


def gaussian_field(n: int, radius: float = 8.0) -> ScalarField:
    return plane_field(
        lambda x: np.exp(-np.sum(x * x, axis=-1)), n, radius, name="gauss"
    )


def ball_indicator(n: int) -> ScalarField:
    return plane_field(
        lambda x: (np.sum(x * x, axis=-1) <= 1.0).astype(float),
        n,
        1.0,
        smooth=False,
        name="ball",
        radial_breaks=(1.0,),
    )


def plane_bump(n: int, radius: float = 2.0) -> ScalarField:
    return plane_field(
        lambda x: smooth_window(np.linalg.norm(x, axis=-1) / radius)
        * (1.0 + 0.3 * x[..., 0]),
        n,
        radius,
        name="plane_bump",
    )


# Catalog of named sphere fields used by tests, the service, and the CLI.
_SPHERE_CATALOG: dict[str, Callable[[int], ScalarField]] = {
    "const1": lambda n: sphere_field(lambda p: np.ones(p.shape[:-1]), n, name="const1"),
    "z": lambda n: sphere_field(lambda p: p[..., -1], n, name="z"),
    "z2": lambda n: sphere_field(lambda p: p[..., -1] ** 2, n, name="z2"),
    "smooth1": lambda n: sphere_field(
        lambda p: np.exp(0.8 * p[..., 0] + 0.5 * p[..., 1] + 0.3 * p[..., -1]),
        n,
        name="smooth1",
    ),
    "harm2": lambda n: sphere_field(lambda p: p[..., 0] * p[..., 1], n, name="harm2"),
}


def sphere_catalog_names() -> list[str]:
    return sorted(_SPHERE_CATALOG)


def catalog_field(name: str, n: int, domain: str = SPHERE, a: float | None = None,
                  margin: float = 0.1) -> ScalarField:
    """Resolve a catalog name to a field on the requested domain.

    Sphere names restricted to a cap keep their formula and acquire the hard
    cap gate (margin 0); bump names produce margin-supported cap fields.
    """
    if name == "cap_bump":
        if a is None:
            raise DomainError("cap_bump requires a cap height")
        return latitude_bump(n, a, margin=margin, name="cap_bump")
    if name == "cap_bump_mod":
        if a is None:
            raise DomainError("cap_bump_mod requires a cap height")
        return latitude_bump(n, a, margin=margin, modulated=True, name="cap_bump_mod")
    if name not in _SPHERE_CATALOG:
        raise DomainError(f"unknown catalog field {name!r}")
    f = _SPHERE_CATALOG[name](n)
    if domain == CAP:
        if a is None:
            raise DomainError("cap fields require a cap height")
        return ScalarField(f.evaluate, CAP, n, cap_a=a, margin=0.0, smooth=f.smooth, name=f.name)
    return f


def smooth_sphere_catalog(n: int) -> list[ScalarField]:
    """The three-element smooth catalog used by factorization sweeps."""
    return [catalog_field(name, n) for name in ("const1", "z2", "smooth1")]


def margin_cap_catalog(n: int, a: float, margin: float = 0.1) -> list[ScalarField]:
    return [
        latitude_bump(n, a, margin=margin, name="cap_bump"),
        latitude_bump(n, a, margin=margin, modulated=True, name="cap_bump_mod"),
    ]


def grid_colatitudes(count: int, a: float = 1.0) -> np.ndarray:
    """Interior colatitude samples covering {eta_last < a} (full sphere at a=1)."""
    lo = 0.0 if a >= 1.0 else float(np.arccos(a))
    return lo + (np.pi - lo) * (np.arange(count) + 0.5) / count


def grid_longitudes(count: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(count) / count


class SampledSphereField:
    """Bicubic interpolant of lat-lon samples, evaluable as a sphere field.

    Samples live on the grid (grid_colatitudes(i, a), grid_longitudes(j)) with
    values[i, j] row-major.  Longitude is padded periodically; colatitude is
    clamped to the sampled range.  Only n = 2 grids are supported.
    """

    def __init__(self, values: np.ndarray, a: float = 1.0):
        from scipy.interpolate import RectBivariateSpline

        values = np.asarray(values, dtype=float)
        if values.ndim != 2:
            raise DomainError("sampled sphere fields need a 2-D value grid")
        if not np.all(np.isfinite(values)):
            raise DomainError("sampled values must be finite")
        self.a = float(a)
        self.shape = values.shape
        theta = grid_colatitudes(values.shape[0], a)
        phi = grid_longitudes(values.shape[1])
        pad = 3
        phi_ext = np.concatenate([phi[-pad:] - 2 * np.pi, phi, phi[:pad] + 2 * np.pi])
        vals_ext = np.concatenate([values[:, -pad:], values, values[:, :pad]], axis=1)
        self._theta_lim = (theta[0], theta[-1])
        self._spline = RectBivariateSpline(theta, phi_ext, vals_ext, kx=3, ky=3)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        flat = pts.reshape(-1, pts.shape[-1])
        theta = np.arccos(np.clip(flat[:, -1], -1.0, 1.0))
        theta = np.clip(theta, self._theta_lim[0], self._theta_lim[1])
        phi = np.mod(np.arctan2(flat[:, 1], flat[:, 0]), 2.0 * np.pi)
        vals = self._spline.ev(theta, phi)
        return vals.reshape(pts.shape[:-1])

    def as_field(self, smooth: bool = True, name: str = "sampled") -> ScalarField:
        if self.a >= 1.0:
            return sphere_field(self, 2, smooth=smooth, name=name)
        return cap_field(self, 2, self.a, margin=0.0, smooth=smooth, name=name)


def write_grid_file(path, values: np.ndarray, a: float = 1.0) -> None:
    """Plain-text sample grid: one header line, then row-major values."""
    values = np.asarray(values, dtype=float)
    with open(path, "w") as fh:
        fh.write(f"n=2 kind=latlon dims={values.shape[0]}x{values.shape[1]} a={float(a)!r}\n")
        for v in values.reshape(-1):
            fh.write(f"{float(v)!r}\n")


def read_grid_file(path) -> SampledSphereField:
    with open(path) as fh:
        header = fh.readline().split()
        fields = dict(item.split("=", 1) for item in header)
        try:
            n = int(fields["n"])
            kind = fields["kind"]
            di, dj = (int(x) for x in fields["dims"].split("x"))
            a = float(fields["a"])
        except (KeyError, ValueError) as exc:
            raise DomainError(f"malformed grid file header: {header}") from exc
        if n != 2 or kind != "latlon":
            raise DomainError(f"unsupported grid file (n={n}, kind={kind})")
        vals = np.array([float(line) for line in fh if line.strip()])
    if vals.size != di * dj:
        raise DomainError(f"grid file has {vals.size} values, expected {di * dj}")
    if not np.all(np.isfinite(vals)):
        raise DomainError("grid file contains non-finite values")
    return SampledSphereField(vals.reshape(di, dj), a=a)
