"""Johnson association scheme machinery.

Adjacency matrices of the generalized Johnson graphs on k-subsets of
{1..n} (indexed by subset distance), the Bose-Mesner algebra they span,
Hahn and dual Hahn polynomial values, the eigenmatrices P and Q, and the
orthogonal projector basis E_j.

Index conventions used throughout:
  * A_i connects patterns at subset distance i (so A_0 is the identity).
  * Eigenvalue index j runs 0..k with multiplicity m_j = C(n,j) - C(n,j-1);
    j = 0 is the Perron eigenvalue (all-ones eigenvector).
  * Hahn polynomials carry parameters (-n+k-1, -k-1, k): this is the
    parameter set that simultaneously reproduces the known degree-1
    closed form 1 - n x / (k(n-k)) and the adjacency spectra, and it is
    validated against a dense eigensolver in the tests.
"""

from __future__ import annotations

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
    "SchemeBasis",
    "Eigenmatrices",
    "SchemeClosureError",
    "valency",
    "multiplicity",
    "adjacency_matrix",
    "scheme_basis",
    "hahn_polynomial",
    "dual_hahn_polynomial",
    "eigenmatrices",
    "scheme_projector",
    "scheme_projector_exact",
    "verify_bose_mesner_closure",
]


class SchemeClosureError(Exception):
    """A product of adjacency matrices left the span of the scheme."""


@dataclass(frozen=True)
class SchemeBasis:
    """The k+1 adjacency matrices of the scheme on k-subsets of {1..n}."""

    n: int
    k: int
    adjacency: tuple[np.ndarray, ...]  # A_0..A_k, each N x N of 0/1

    @property
    def size(self) -> int:
        return binomial(self.n, self.k)


@dataclass(frozen=True)
class Eigenmatrices:
    """Exact eigenmatrices: P[j][i] = p_i(j), Q[i][j] = q_j(i)."""

    n: int
    k: int
    P: tuple[tuple[Fraction, ...], ...]
    Q: tuple[tuple[Fraction, ...], ...]


def valency(n: int, k: int, i: int) -> int:
    """Number of patterns at distance i from a fixed pattern."""
    return binomial(k, i) * binomial(n - k, i)


def multiplicity(n: int, j: int) -> int:
    """Multiplicity m_j = C(n, j) - C(n, j-1) of the j-th eigenvalue."""
    return binomial(n, j) - binomial(n, j - 1)


def adjacency_matrix(n: int, k: int, i: int) -> np.ndarray:
    """N x N 0/1 matrix connecting patterns at subset distance i."""
    if not 0 <= i <= k <= n:
        raise ValueError(f"adjacency_matrix: need 0 <= i <= k <= n, got {(n, k, i)}")
    pats = enumerate_patterns(n, k)
    N = len(pats)
    A = np.zeros((N, N), dtype=np.uint8)
    for a in range(N):
        for b in range(a, N):
            if pattern_distance(pats[a], pats[b]) == i:
                A[a, b] = A[b, a] = 1
    return A


def scheme_basis(n: int, k: int) -> SchemeBasis:
    """All adjacency matrices A_0..A_k in one pass over pattern pairs."""
    pats = enumerate_patterns(n, k)
    N = len(pats)
    mats = [np.zeros((N, N), dtype=np.uint8) for _ in range(k + 1)]
    for a in range(N):
        for b in range(a, N):
            d = pattern_distance(pats[a], pats[b])
            mats[d][a, b] = mats[d][b, a] = 1
    return SchemeBasis(n=n, k=k, adjacency=tuple(mats))


def hahn_polynomial(j: int, x: int, n: int, k: int) -> Fraction:
    """Hahn polynomial value Q_j(x) for the scheme on k-subsets of {1..n}.

    3F2(-j, j-n-1, -x; -n+k, -k; 1); degree 1 is 1 - n x / (k(n-k)).
    """
    if not 0 <= j <= k:
        raise ValueError(f"hahn_polynomial: degree {j} out of range [0, {k}]")
    return hypergeometric_terminating([-j, j - n - 1, -x], [-n + k, -k], 1)


def dual_hahn_polynomial(i: int, x: int, n: int, k: int) -> Fraction:
    """Dual Hahn polynomial value R_i at the grid point x.

    3F2(-i, -x, x-n-1; -n+k, -k; 1); degree 1 is 1 - x(n-x+1)/(k(n-k)).
    Duality R_i(x=j) = Q_j(x=i) holds exactly.
    """
    if not 0 <= i <= k:
        raise ValueError(f"dual_hahn_polynomial: degree {i} out of range [0, {k}]")
    return hypergeometric_terminating([-i, -x, x - n - 1], [-n + k, -k], 1)


def eigenmatrices(n: int, k: int) -> Eigenmatrices:
    """Exact P and Q with p_i(j) = k_i Q_j(i) and q_j(i) = m_j Q_j(i).

    P @ Q == C(n,k) * Identity by Hahn orthogonality.
    """
    qvals = [[hahn_polynomial(j, i, n, k) for i in range(k + 1)] for j in range(k + 1)]
    P = tuple(
        tuple(valency(n, k, i) * qvals[j][i] for i in range(k + 1))
        for j in range(k + 1)
    )
    Q = tuple(
        tuple(multiplicity(n, j) * qvals[j][i] for j in range(k + 1))
        for i in range(k + 1)
    )
    return Eigenmatrices(n=n, k=k, P=P, Q=Q)


def scheme_projector(n: int, k: int, j: int) -> np.ndarray:
    """Float projector E_j = (1/N) sum_i q_j(i) A_i onto the j-th eigenspace."""
    return np.array(scheme_projector_exact(n, k, j), dtype=float)


def scheme_projector_exact(n: int, k: int, j: int) -> list[list[Fraction]]:
    """E_j with exact rational entries (rank and trace both equal m_j)."""
    if not 0 <= j <= k:
        raise ValueError(f"scheme_projector: index {j} out of range [0, {k}]")
    basis = scheme_basis(n, k)
    N = basis.size
    m_j = multiplicity(n, j)
    coeffs = [Fraction(m_j * hahn_polynomial(j, i, n, k), N) for i in range(k + 1)]
    E = [[Fraction(0)] * N for _ in range(N)]
    for i, A in enumerate(basis.adjacency):
        c = coeffs[i]
        if c == 0:
            continue
        rows, cols = np.nonzero(A)
        for a, b in zip(rows.tolist(), cols.tolist()):
            E[a][b] += c
    return E


def verify_bose_mesner_closure(basis: SchemeBasis) -> dict[tuple[int, int], list[int]]:
    """Intersection numbers p_ij^l with A_i A_j = sum_l p_ij^l A_l.

    Returns {(i, j): [p_ij^0, ..., p_ij^k]}.  Raises SchemeClosureError
    if any product leaves the span or any coefficient is not a
    non-negative integer (both signal a construction bug).
    """
    k = basis.k
    mats = [A.astype(np.int64) for A in basis.adjacency]
    # A_l have disjoint supports covering all entries, so p_ij^l can be
    # read off any entry where A_l is 1 and then checked globally.
    numbers: dict[tuple[int, int], list[int]] = {}
    for i in range(k + 1):
        for j in range(k + 1):
            prod = mats[i] @ mats[j]
            coeffs = []
            recon = np.zeros_like(prod)
            for l in range(k + 1):
                rows, cols = np.nonzero(basis.adjacency[l])
                if rows.size == 0:  # empty distance class (k near n)
                    coeffs.append(0)
                    continue
                val = int(prod[rows[0], cols[0]])
                if val < 0:
                    raise SchemeClosureError(
                        f"negative intersection number p_{i}{j}^{l} = {val}"
                    )
                coeffs.append(val)
                recon += val * mats[l]
            if not np.array_equal(prod, recon):
                raise SchemeClosureError(
                    f"A_{i} A_{j} is not in the span of the scheme for "
                    f"(n, k) = ({basis.n}, {basis.k})"
                )
            numbers[(i, j)] = coeffs
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            if numbers[(i, j)] != numbers[(j, i)]:
                raise SchemeClosureError(f"A_{i} and A_{j} do not commute")
    return numbers
