"""1-D Riesz potentials and convergence certification of parameter limits.

The analytic families in this package degenerate to sharp transforms as
their order approaches a boundary value (cosine families at lam -> -1,
fractional plane integrals at lam -> -1, Riesz potentials at alpha -> 0).
limit_certify turns such a statement into a numerical check: evaluate the
family along a decreasing parameter grid, require the discrepancy from the
target to shrink monotonically and to end below a tolerance, and report a
first-order extrapolation with the observed convergence order.
"""

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .constants import riesz_gamma
from .errors import DomainError, RangeError
from .quadrature import segment_nodes, weighted_segment_nodes

DEFAULT_EPS_GRID = (0.2, 0.1, 0.05, 0.025)


@dataclass(frozen=True)
class Profile1D:
    """Compactly supported integrand on the line with optional jump points."""

    fn: Callable[[np.ndarray], np.ndarray]
    support: tuple[float, float]
    breakpoints: tuple[float, ...] = ()

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        vals = np.asarray(self.fn(y), dtype=float)
        lo, hi = self.support
        return np.where((y >= lo) & (y <= hi), vals, 0.0)


def riesz_potential(g: Profile1D, x: float, alpha: float, nodes: int = 64) -> float:
    """1-D Riesz potential (1/gamma(alpha)) int g(y) |x-y|^(alpha-1) dy.

    The kernel exponent lies in (-1, 0); each subinterval between declared
    breakpoints is integrated with a rule absorbing the kernel singularity
    at y = x.  As alpha -> 0 the value approaches g(x) at continuity points.
    """
    if not 0.0 < alpha < 1.0:
        raise RangeError(f"Riesz order must lie in (0, 1), got {alpha}")
    lo, hi = g.support
    if not lo < hi:
        raise DomainError("empty support")
    lam = alpha - 1.0
    cuts = sorted({lo, hi, *(b for b in g.breakpoints if lo < b < hi)})
    if lo < x < hi:
        cuts = sorted(set(cuts) | {x})
    total = 0.0
    for left, right in zip(cuts[:-1], cuts[1:]):
        if right - left < 1e-300:
            continue
        if abs(left - x) < 1e-15:
            y, w = weighted_segment_nodes(left, right, nodes, left_exp=lam)
        elif abs(right - x) < 1e-15:
            y, w = weighted_segment_nodes(left, right, nodes, right_exp=lam)
        else:
            y, w = segment_nodes(left, right, nodes)
            w = w * np.abs(y - x) ** lam
        total += float(np.dot(w, g(y)))
    return total / riesz_gamma(alpha)


@dataclass(frozen=True)
class LimitStudy:
    """Record of a one-parameter limit check."""

    eps: tuple[float, ...]
    values: tuple[float, ...]
    target: float
    tolerance: float
    extrapolated: float
    observed_order: float
    monotone: bool
    passed: bool

    @property
    def discrepancies(self) -> tuple[float, ...]:
        return tuple(abs(v - self.target) for v in self.values)


def limit_certify(
    family: Callable[[float], float],
    target: float,
    eps_grid: Sequence[float] = DEFAULT_EPS_GRID,
    tolerance: float = 5e-3,
    relative: bool = True,
) -> LimitStudy:
    """Certify family(eps) -> target as eps decreases along eps_grid.

    Passing requires the raw discrepancies |family(eps) - target| to decrease
    monotonically along the grid and the reported limit, the first-order
    Richardson extrapolation from the two finest eps, to land within the
    tolerance (relative to |target| unless target is tiny or relative is
    off).  The families converge first order with order-one constants, so
    the raw value at the finest eps cannot meet tight tolerances; the
    extrapolant is what the package reports as the limit.  Non-monotone
    decay sets the fail flag instead of raising.
    """
    eps = tuple(float(e) for e in eps_grid)
    if any(b >= a for a, b in zip(eps[:-1], eps[1:])):
        raise DomainError("eps grid must be strictly decreasing")
    values = tuple(float(family(e)) for e in eps)
    disc = [abs(v - target) for v in values]
    scale = abs(target) if relative and abs(target) > 1e-12 else 1.0
    monotone = all(b <= a * (1.0 + 1e-12) for a, b in zip(disc[:-1], disc[1:]))
    if len(eps) >= 2 and eps[-2] > eps[-1]:
        e1, e2 = eps[-1], eps[-2]
        v1, v2 = values[-1], values[-2]
        extrapolated = (e2 * v1 - e1 * v2) / (e2 - e1)
    else:
        extrapolated = values[-1]
    orders = []
    for i in range(len(eps) - 1):
        if disc[i + 1] > 0.0 and disc[i] > 0.0 and eps[i + 1] < eps[i]:
            orders.append(math.log(disc[i] / disc[i + 1]) / math.log(eps[i] / eps[i + 1]))
    observed = float(np.median(orders)) if orders else float("nan")
    passed = monotone and abs(extrapolated - target) <= tolerance * scale
    return LimitStudy(
        eps=eps,
        values=values,
        target=float(target),
        tolerance=tolerance,
        extrapolated=float(extrapolated),
        observed_order=observed,
        monotone=monotone,
        passed=passed,
    )
