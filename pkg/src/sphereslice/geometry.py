"""Points on the unit sphere and deterministic orthonormal frames.

Points are plain numpy arrays of length n+1 with unit Euclidean norm.
A point eta decomposes meridionally as

    eta = sqrt(1 - u^2) * psi + u * e_last,    u = eta[-1],  psi in S^{n-1},

which is degenerate at the poles u = +-1 where psi is arbitrary.
"""

import numpy as np

from .errors import DomainError

UNIT_TOL = 1e-10


def north_pole(n: int) -> np.ndarray:
    p = np.zeros(n + 1)
    p[-1] = 1.0
    return p


def south_pole(n: int) -> np.ndarray:
    p = np.zeros(n + 1)
    p[-1] = -1.0
    return p


def is_unit(v: np.ndarray, tol: float = UNIT_TOL) -> bool:
    return abs(float(np.dot(v, v)) - 1.0) <= tol


def make_point(psi: np.ndarray, u: float) -> np.ndarray:
    """Assemble eta = sqrt(1-u^2) psi + u e_last from meridional coordinates.

    psi must be a unit vector in R^n and |u| <= 1.  At u = +-1 the result is
    the corresponding pole regardless of psi.
    """
    psi = np.asarray(psi, dtype=float)
    if not is_unit(psi):
        raise DomainError("psi must be a unit vector")
    if abs(u) > 1.0 + 1e-14:
        raise DomainError(f"latitude coordinate must satisfy |u| <= 1, got {u}")
    u = min(1.0, max(-1.0, float(u)))
    s = np.sqrt(max(0.0, 1.0 - u * u))
    return np.concatenate([s * psi, [u]])


def decompose(eta: np.ndarray) -> tuple[np.ndarray, float]:
    """Inverse of make_point; at the poles psi defaults to e_1."""
    eta = np.asarray(eta, dtype=float)
    u = float(eta[-1])
    s = np.sqrt(max(0.0, 1.0 - u * u))
    if s < 1e-15:
        psi = np.zeros(eta.size - 1)
        psi[0] = 1.0
        return psi, np.sign(u) if u != 0 else 1.0
    return eta[:-1] / s, u


def orthonormal_basis(xi: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of the hyperplane orthogonal to xi.

    Gram-Schmidt over the coordinate vectors ordered by increasing |xi_k|
    (ties broken by lowest index), so the construction is reproducible and
    identical for xi and -xi.  Returns an (n+1, n) matrix whose columns span
    xi-perp.
    """
    xi = np.asarray(xi, dtype=float)
    dim = xi.size
    order = np.argsort(np.abs(xi), kind="stable")
    cols = []
    for k in order:
        v = np.zeros(dim)
        v[k] = 1.0
        v = v - np.dot(v, xi) * xi
        for b in cols:
            v = v - np.dot(v, b) * b
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            cols.append(v / nv)
        if len(cols) == dim - 1:
            break
    return np.stack(cols, axis=1)


def basis_last_aligned(xi: np.ndarray) -> tuple[np.ndarray, float]:
    """Basis of xi-perp whose final column carries the whole e_last component.

    The last column is the normalized projection of e_last onto xi-perp and
    every other column is orthogonal to e_last, so the last coordinate of a
    point c + R * (B @ coeffs) depends on coeffs only through its final entry.
    Returns (B, p) where p = |proj of e_last| >= 0; p == 0 means xi = +-e_last
    and the returned basis is the plain deterministic one.
    """
    xi = np.asarray(xi, dtype=float)
    dim = xi.size
    e_last = np.zeros(dim)
    e_last[-1] = 1.0
    proj = e_last - xi[-1] * xi
    p = float(np.linalg.norm(proj))
    if p < 1e-13:
        return orthonormal_basis(xi), 0.0
    b_last = proj / p
    cols = []
    order = np.argsort(np.abs(xi[:-1]), kind="stable")
    for k in order:
        v = np.zeros(dim)
        v[k] = 1.0
        v = v - np.dot(v, xi) * xi - np.dot(v, b_last) * b_last
        for b in cols:
            v = v - np.dot(v, b) * b
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            cols.append(v / nv)
        if len(cols) == dim - 2:
            break
    cols.append(b_last)
    return np.stack(cols, axis=1), p


def random_unit(rng: np.random.Generator, dim: int, size: int | None = None) -> np.ndarray:
    """Uniform random unit vectors in R^dim (rows if size is given)."""
    shape = (dim,) if size is None else (size, dim)
    v = rng.normal(size=shape)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)
