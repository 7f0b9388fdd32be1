"""Gram matrix of the anomaly hypotheses and its spectrum.

The Gram matrix has entries (c^2)^d with d the subset distance between
the two anomaly patterns.  Its k+1 distinct eigenvalues come in closed
form as terminating 2F1 sums; a dense eigendecomposition of the explicit
matrix serves as the independent oracle.  The exact-rational pathway is
taken whenever the instance overlap is given as a Fraction.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combin import (
    binomial,
    enumerate_patterns,
    hypergeometric_terminating,
    pattern_distance,
)

__all__ = [
    "ProblemInstance",
    "SpectrumEntry",
    "Spectrum",
    "gram_matrix",
    "closed_form_spectrum",
    "direct_spectrum",
    "matrix_sqrt",
]

SIZE_CAP_DEFAULT = 5000

Overlap = float | Fraction


@dataclass(frozen=True)
class ProblemInstance:
    """A known-states detection task: n preparations, k anomalies, overlap c.

    Pass c as a Fraction to get exact rational Gram entries and spectrum.
    """

    n: int
    k: int
    c: Overlap

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k must be in [0, n], got k={self.k}, n={self.n}")
        if not 0 <= self.c <= 1:
            raise ValueError(f"overlap c must be in [0, 1], got {self.c}")

    @property
    def N(self) -> int:
        return binomial(self.n, self.k)

    @property
    def c2(self) -> Overlap:
        return self.c * self.c

    @property
    def exact(self) -> bool:
        return isinstance(self.c, (Fraction, numbers.Integral))


@dataclass(frozen=True)
class SpectrumEntry:
    j: int
    value: Overlap
    multiplicity: int


@dataclass(frozen=True)
class Spectrum:
    """The k+1 distinct Gram eigenvalues, largest (j=0) first."""

    instance: ProblemInstance
    entries: tuple[SpectrumEntry, ...]

    def as_multiset(self) -> np.ndarray:
        """All N eigenvalues with repetition, descending."""
        vals = []
        for e in self.entries:
            vals.extend([float(e.value)] * e.multiplicity)
        return np.sort(np.array(vals))[::-1]


def gram_matrix(instance: ProblemInstance, size_cap: int = SIZE_CAP_DEFAULT):
    """Explicit N x N Gram matrix in lexicographic pattern order.

    Returns a float ndarray, or a nested list of Fractions when the
    instance overlap is exact.
    """
    N = instance.N
    if N > size_cap:
        raise ValueError(f"Gram size {N} exceeds cap {size_cap}")
    pats = enumerate_patterns(instance.n, instance.k)
    z = instance.c2
    if instance.exact:
        z = Fraction(z)
        G = [[Fraction(0)] * N for _ in range(N)]
        for a in range(N):
            for b in range(N):
                G[a][b] = z ** pattern_distance(pats[a], pats[b])
        return G
    G = np.empty((N, N))
    for a in range(N):
        for b in range(a, N):
            G[a, b] = G[b, a] = z ** pattern_distance(pats[a], pats[b])
    return G


def _eigenvalue(j: int, n: int, k: int, z: Fraction) -> Fraction:
    return (1 - z) ** j * hypergeometric_terminating([j - k, -n + k + j], [1], z)


def closed_form_spectrum(instance: ProblemInstance) -> Spectrum:
    """The k+1 distinct eigenvalues lambda_j with multiplicities m_j.

    lambda_j = (1-c^2)^j 2F1(j-k, -n+k+j; 1; c^2),
    m_j = C(n, j) - C(n, j-1).
    """
    n, k = instance.n, instance.k
    z = Fraction(instance.c2)  # exact even for float input (binary rational)
    entries = []
    for j in range(k + 1):
        lam = _eigenvalue(j, n, k, z)
        val: Overlap = lam if instance.exact else float(lam)
        entries.append(
            SpectrumEntry(j=j, value=val, multiplicity=binomial(n, j) - binomial(n, j - 1))
        )
    return Spectrum(instance=instance, entries=tuple(entries))


def direct_spectrum(matrix) -> np.ndarray:
    """Dense symmetric eigendecomposition oracle; eigenvalues descending."""
    M = np.array(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"direct_spectrum: expected a square matrix, got {M.shape}")
    if not np.allclose(M, M.T, atol=1e-12 * max(1.0, np.abs(M).max())):
        raise ValueError("direct_spectrum: matrix is not symmetric")
    return np.sort(np.linalg.eigvalsh(M))[::-1]


def matrix_sqrt(G, clamp: float = 1e-10) -> np.ndarray:
    """Symmetric PSD square root via eigendecomposition.

    Eigenvalues in [-clamp, 0) are clamped to zero (rank collapse near
    c = 1); materially negative eigenvalues are rejected.
    """
    M = np.array(G, dtype=float)
    scale = max(1.0, np.abs(M).max())
    vals, vecs = np.linalg.eigh((M + M.T) / 2)
    if vals.min() < -clamp * scale:
        raise ValueError(f"matrix_sqrt: matrix is not PSD (min eigenvalue {vals.min()})")
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.T
