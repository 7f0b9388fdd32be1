"""The universal protocol: success probability when the reference and
anomalous states are unknown.

The closed form is a sum over bipartitions (n-l, l), l = 0..k, of ratios
of unitary-group and symmetric-group irrep dimensions, evaluated in
exact rational arithmetic.  The averages over the overlap distribution
use Gauss-Legendre quadrature on u = c^2, which is exact for the
polynomial integrands appearing here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combin import binomial
from .gram import ProblemInstance
from .protocols import min_error_success

__all__ = [
    "UniversalInstance",
    "IrrepDims",
    "QuadratureError",
    "irrep_dimensions",
    "universal_success",
    "universal_asymptote",
    "average_known_success",
    "average_min_error_curve",
]


class QuadratureError(Exception):
    """Numerical quadrature failed to reproduce the known closed form."""


@dataclass(frozen=True)
class UniversalInstance:
    """An unknown-states detection task: n preparations, k anomalies,
    local dimension d."""

    n: int
    k: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k must be in [0, n], got k={self.k}")
        if self.d < 2:
            raise ValueError(f"local dimension d must be >= 2, got {self.d}")


@dataclass(frozen=True)
class IrrepDims:
    s: int  # unitary-group irrep dimension
    m: int  # symmetric-group irrep dimension


def irrep_dimensions(lambda1: int, lambda2: int, d: int) -> IrrepDims:
    """Irrep dimensions for the bipartition (lambda1, lambda2) of n = l1 + l2.

    s = (l1-l2+1)/(l1+1) C(l1+d-1, d-1) C(l2+d-2, d-2),
    m = C(n, l2) - C(n, l2-1).
    """
    if lambda2 < 0 or lambda1 < lambda2:
        raise ValueError(f"invalid bipartition ({lambda1}, {lambda2})")
    if d < 2:
        raise ValueError(f"local dimension d must be >= 2, got {d}")
    n = lambda1 + lambda2
    s = Fraction(lambda1 - lambda2 + 1, lambda1 + 1) * binomial(
        lambda1 + d - 1, d - 1
    ) * binomial(lambda2 + d - 2, d - 2)
    assert s.denominator == 1
    m = binomial(n, lambda2) - binomial(n, lambda2 - 1)
    return IrrepDims(s=int(s), m=m)


def universal_success(instance: UniversalInstance) -> Fraction:
    """Exact optimal success probability of the universal protocol.

    Sum over bipartitions (n-l, l), l = 0..k, of
      (n-2l+1)^2/(n-l+1)^2 * C(n-l+d-1,d-1)/C(n-k+d-1,d-1)
                           * C(n,l)/C(n,k) * C(l+d-2,d-2)/C(k+d-1,d-1).
    """
    n, k, d = instance.n, instance.k, instance.d
    if n < 2 * k:
        raise ValueError(f"universal_success: requires n >= 2k, got n={n}, k={k}")
    total = Fraction(0)
    for l in range(k + 1):
        total += (
            Fraction(n - 2 * l + 1, n - l + 1) ** 2
            * Fraction(binomial(n - l + d - 1, d - 1), binomial(n - k + d - 1, d - 1))
            * Fraction(binomial(n, l), binomial(n, k))
            * Fraction(binomial(l + d - 2, d - 2), binomial(k + d - 1, d - 1))
        )
    return total


def universal_asymptote(k: int, d: int) -> Fraction:
    """Large-n limit (d-1)/(d-1+k) of the universal success probability."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return Fraction(d - 1, d - 1 + k)


def _overlap_quadrature(points: int):
    """Gauss-Legendre nodes/weights for u = c^2 on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(points)
    return (x + 1) / 2, w / 2


def average_known_success(k: int, d: int, quadrature_points: int = 64) -> float:
    """Average of (1-c^2)^k over the overlap measure (d-1)(1-c^2)^(d-2) dc^2.

    Computed by quadrature and checked against the Beta-integral closed
    form (d-1)/(d-1+k); a residual above 1e-8 raises QuadratureError.
    """
    if quadrature_points < 16:
        raise ValueError("quadrature_points must be >= 16")
    if d < 2 or k < 0:
        raise ValueError(f"need d >= 2 and k >= 0, got d={d}, k={k}")
    u, w = _overlap_quadrature(quadrature_points)
    value = float(np.sum(w * (1 - u) ** k * (d - 1) * (1 - u) ** (d - 2)))
    expected = float(universal_asymptote(k, d))
    if abs(value - expected) > 1e-8:
        raise QuadratureError(
            f"quadrature {value} deviates from closed form {expected}"
        )
    return value


def average_min_error_curve(
    n: int, k: int, d: int, quadrature_points: int = 64
) -> float:
    """Known-states minimum-error success averaged over the overlap measure."""
    if quadrature_points < 16:
        raise ValueError("quadrature_points must be >= 16")
    u, w = _overlap_quadrature(quadrature_points)
    density = (d - 1) * (1 - u) ** (d - 2)
    vals = np.array(
        [
            min_error_success(ProblemInstance(n=n, k=k, c=math.sqrt(ui))).value
            for ui in u
        ]
    )
    return float(np.sum(w * density * vals))
