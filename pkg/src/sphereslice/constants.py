"""Normalization constants used throughout the transform formulas.

All constants are expressed through the Gamma function.  ``sphere_area(n)``
is the total surface measure of the unit n-sphere sitting in R^{n+1}, so
``sphere_area(2) == 4*pi`` and ``sphere_area(1) == 2*pi``.
"""

import math

from .errors import RangeError


def sphere_area(n: int) -> float:
    """Surface area of the unit n-sphere: 2 pi^((n+1)/2) / Gamma((n+1)/2)."""
    if n < 0:
        raise RangeError(f"sphere dimension must be >= 0, got {n}")
    return 2.0 * math.pi ** ((n + 1) / 2.0) / math.gamma((n + 1) / 2.0)


def cosine_gamma(n: int, lam: float) -> float:
    """Normalizing constant of the lambda-cosine family.

    gamma(n, lam) = sqrt(pi) Gamma(-lam/2) / (Gamma((n+1)/2) Gamma((1+lam)/2)).
    Has simple poles at lam = 0, 2, 4, ...; evaluating there is an error.
    """
    if lam <= -1.0:
        raise RangeError(f"cosine exponent must satisfy lam > -1, got {lam}")
    if lam >= 0.0 and abs(lam - 2.0 * round(lam / 2.0)) < 1e-12:
        raise RangeError(f"cosine normalization has a pole at lam = {lam}")
    return (
        math.sqrt(math.pi)
        * math.gamma(-lam / 2.0)
        / (math.gamma((n + 1) / 2.0) * math.gamma((1.0 + lam) / 2.0))
    )


def riesz_gamma(alpha: float) -> float:
    """1-D Riesz normalization: 2^a sqrt(pi) Gamma(a/2) / Gamma((1-a)/2)."""
    if not 0.0 < alpha < 1.0:
        raise RangeError(f"Riesz order must lie in (0, 1), got {alpha}")
    return (
        2.0**alpha
        * math.sqrt(math.pi)
        * math.gamma(alpha / 2.0)
        / math.gamma((1.0 - alpha) / 2.0)
    )


def funk_limit_const(n: int) -> float:
    """Constant c_n = sqrt(pi)/Gamma(n/2) in the cosine-to-Funk limit."""
    return math.sqrt(math.pi) / math.gamma(n / 2.0)


def radon_limit_const(n: int) -> float:
    """Constant d_n = pi/Gamma((n+1)/2) in the Semyanistyi-to-Radon limit."""
    return math.pi / math.gamma((n + 1) / 2.0)
