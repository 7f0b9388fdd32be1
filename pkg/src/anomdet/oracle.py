"""Brute-force verification from explicit states and density matrices.

Nothing in this module uses the closed forms: hypothesis states are
built as literal tensor products, measurements as literal square-root
measurements, and symmetric projectors by averaging permutation
operators.  This keeps the oracle independent of the spectral machinery
it is used to check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .combin import binomial, enumerate_patterns, normalize_pattern
from .gram import ProblemInstance, matrix_sqrt

__all__ = [
    "SrmResult",
    "HolevoReport",
    "hypothesis_state",
    "all_hypothesis_states",
    "srm_success_oracle",
    "symmetric_projector",
    "universal_hypothesis",
    "universal_success_oracle",
    "holevo_check",
    "sample_measurement",
]

STATE_QUBITS_CAP = 14
DENSITY_DIM_CAP = 4096
SUPPORT_THRESHOLD = 1e-10


def hypothesis_state(instance: ProblemInstance, pattern) -> np.ndarray:
    """Explicit 2^n state vector for one anomaly pattern.

    Qubit embedding: reference |0>, anomaly c|0> + sqrt(1-c^2)|1>; only
    the overlap c matters for the known-states problem, so qubits
    suffice for any d.
    """
    n = instance.n
    if n > STATE_QUBITS_CAP:
        raise ValueError(f"hypothesis_state: n={n} exceeds cap {STATE_QUBITS_CAP}")
    pat = normalize_pattern(pattern, n)
    if len(pat) != instance.k:
        raise ValueError(f"pattern {pat} has wrong cardinality for k={instance.k}")
    c = float(instance.c)
    phi0 = np.array([1.0, 0.0])
    phi1 = np.array([c, math.sqrt(max(0.0, 1 - c * c))])
    state = np.array([1.0])
    for pos in range(1, n + 1):
        state = np.kron(state, phi1 if pos in pat else phi0)
    return state


def all_hypothesis_states(instance: ProblemInstance) -> np.ndarray:
    """Stack of all C(n,k) hypothesis vectors in lexicographic pattern order."""
    pats = enumerate_patterns(instance.n, instance.k)
    return np.array([hypothesis_state(instance, p) for p in pats])


@dataclass(frozen=True)
class SrmResult:
    success: float
    diagonal: np.ndarray  # diagonal of sqrt(Gram): per-hypothesis amplitudes
    measurement_vectors: np.ndarray  # rows are the POVM vectors |m_r> in the ambient space


def srm_success_oracle(states: np.ndarray) -> SrmResult:
    """Square-root-measurement success probability from explicit states.

    Builds the Gram matrix from inner products, takes its matrix square
    root S and returns (1/N) sum_r S_rr^2.  The measurement vectors (the
    POVM is |m_r><m_r|) are returned for completeness checks; they
    resolve the identity on the span of the states.
    """
    V = np.array(states, dtype=float)
    N = V.shape[0]
    if N > 5000:
        raise ValueError(f"srm_success_oracle: too many states ({N})")
    G = V @ V.T
    S = matrix_sqrt(G)
    # |m_r> = sum_s (S^+)_{sr} |Psi_s>, so that <m_r|Psi_s> = S_rs
    vals, vecs = np.linalg.eigh(S)
    inv = np.where(vals > SUPPORT_THRESHOLD, 1.0 / np.where(vals > SUPPORT_THRESHOLD, vals, 1.0), 0.0)
    S_pinv = (vecs * inv) @ vecs.T
    m_vectors = S_pinv @ V
    diag = np.diag(S).copy()
    return SrmResult(
        success=float(np.sum(diag**2) / N),
        diagonal=diag,
        measurement_vectors=m_vectors,
    )


def symmetric_projector(m: int, d: int) -> np.ndarray:
    """Projector onto the fully symmetric subspace of m d-level parties.

    Built as (1/m!) sum over all m! permutation operators; trace is
    C(m+d-1, d-1).
    """
    if d**m > DENSITY_DIM_CAP:
        raise ValueError(f"symmetric_projector: d^m = {d**m} exceeds cap {DENSITY_DIM_CAP}")
    if math.factorial(m) > 50000:
        raise ValueError(f"symmetric_projector: {m}! permutation operators is too many")
    dim = d**m
    ident = np.eye(dim).reshape([d] * (2 * m))
    acc = np.zeros_like(ident)
    for sigma in permutations(range(m)):
        # permutation operator: sigma applied to the row legs of the identity
        acc += ident.transpose(list(sigma) + list(range(m, 2 * m)))
    return acc.reshape(dim, dim) / math.factorial(m)


def _permute_legs(matrix: np.ndarray, perm: list[int], n: int, d: int) -> np.ndarray:
    """Conjugate a d^n x d^n matrix by the permutation that sends leg i to perm[i]."""
    dim = d**n
    tensor = matrix.reshape([d] * (2 * n))
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    axes = inv + [n + i for i in inv]
    return tensor.transpose(axes).reshape(dim, dim)


def universal_hypothesis(pattern, n: int, k: int, d: int) -> np.ndarray:
    """Averaged density matrix for the hypothesis with anomalies at `pattern`.

    The symmetric projector on the n-k reference parties tensor the
    symmetric projector on the k anomalous parties, legs rearranged so
    the anomalous parties sit at the pattern positions, normalized to
    unit trace.
    """
    if d**n > DENSITY_DIM_CAP:
        raise ValueError(f"universal_hypothesis: d^n = {d**n} exceeds cap {DENSITY_DIM_CAP}")
    if n < 2 * k:
        raise ValueError(f"universal_hypothesis: requires n >= 2k, got n={n}, k={k}")
    pat = normalize_pattern(pattern, n)
    if len(pat) != k:
        raise ValueError(f"pattern {pat} has wrong cardinality for k={k}")
    base = np.kron(symmetric_projector(n - k, d), symmetric_projector(k, d))
    # base legs: first n-k reference, last k anomalous; send them to their slots
    reference = [pos for pos in range(1, n + 1) if pos not in pat]
    perm = [pos - 1 for pos in reference] + [pos - 1 for pos in pat]
    rho = _permute_legs(base, perm, n, d)
    norm = binomial(n - k + d - 1, d - 1) * binomial(k + d - 1, d - 1)
    return rho / norm


def universal_success_oracle(n: int, k: int, d: int) -> float:
    """Square-root measurement on the explicit averaged hypotheses.

    Builds rho = sum_sigma rho_sigma, its pseudo-inverse square root on
    the support, and averages tr(rho_sigma Pi_sigma).
    """
    pats = enumerate_patterns(n, k)
    hyps = [universal_hypothesis(p, n, k, d) for p in pats]
    rho = np.sum(hyps, axis=0)
    vals, vecs = np.linalg.eigh(rho)
    ambiguous = np.sum((vals > 1e-12) & (vals < SUPPORT_THRESHOLD))
    if ambiguous:
        raise ValueError(
            f"universal_success_oracle: {ambiguous} eigenvalues in the "
            "support-detection dead zone [1e-12, 1e-10]"
        )
    support = vals >= SUPPORT_THRESHOLD
    inv_sqrt = np.where(support, 1.0 / np.sqrt(np.where(support, vals, 1.0)), 0.0)
    R = (vecs * inv_sqrt) @ vecs.T  # rho^{-1/2} on the support
    total = 0.0
    for h in hyps:
        pi = R @ h @ R
        total += float(np.tensordot(h, pi))
    return total / len(hyps)


@dataclass(frozen=True)
class HolevoReport:
    feasible: bool
    worst_violation: float  # most negative eigenvalue of Y - rho_sigma


def holevo_check(Y: np.ndarray, hypotheses, tol: float = 1e-9) -> HolevoReport:
    """Check the optimality conditions Y - rho_sigma >= 0 for all hypotheses."""
    worst = 0.0
    for h in hypotheses:
        if Y.shape != h.shape:
            raise ValueError(f"dimension mismatch: {Y.shape} vs {h.shape}")
        low = float(np.linalg.eigvalsh(Y - h)[0])
        worst = min(worst, low)
    return HolevoReport(feasible=worst >= -tol, worst_violation=worst)


def sample_measurement(probabilities, seed: int, shots: int) -> np.ndarray:
    """Multinomial outcome histogram, deterministic for a given seed."""
    p = np.asarray(probabilities, dtype=float)
    if p.min() < 0:
        raise ValueError(f"negative probability {p.min()}")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {p.sum()}, not 1")
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, p / p.sum())
