"""Success probabilities for the known-states detection protocols.

Minimum-error value from the Gram spectrum, its two-term large-n
expansion, hand-expanded closed forms for one to three anomalies, the
unambiguous (zero-error) value, and verification of the semidefinite
optimality certificates for the latter.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combin import binomial
from .gram import ProblemInstance, closed_form_spectrum, direct_spectrum, gram_matrix
from .johnson import multiplicity, scheme_projector_exact

__all__ = [
    "ProtocolResult",
    "CertificateReport",
    "AsymptoticRegimeWarning",
    "min_error_success",
    "min_error_asymptotic",
    "explicit_success_k123",
    "unambiguous_success",
    "verify_unambiguous_certificates",
]


class AsymptoticRegimeWarning(UserWarning):
    """The large-n expansion was evaluated outside its k/n << 1 regime."""


@dataclass(frozen=True)
class ProtocolResult:
    value: float
    method: str  # closed-form | asymptotic | oracle
    instance: ProblemInstance


@dataclass(frozen=True)
class CertificateReport:
    primal_feasible: bool
    dual_feasible: bool
    primal_value: float
    dual_value: float
    gap: float

    @property
    def optimal(self) -> bool:
        return self.primal_feasible and self.dual_feasible


def min_error_success(instance: ProblemInstance) -> ProtocolResult:
    """Optimal minimum-error success probability (sum_j (m_j/N) sqrt(lambda_j))^2."""
    spec = closed_form_spectrum(instance)
    N = instance.N
    total = sum(
        e.multiplicity / N * math.sqrt(float(e.value)) for e in spec.entries
    )
    return ProtocolResult(value=total * total, method="closed-form", instance=instance)


def min_error_asymptotic(instance: ProblemInstance) -> ProtocolResult:
    """Two leading terms of the large-n expansion of the minimum-error value.

    (1-c^2)^k + 2 k c (1-c^2)^(k-1/2) / sqrt(n).  Not clamped to [0, 1];
    warns when k/n > 0.1.
    """
    n, k = instance.n, instance.k
    if k >= n:
        raise ValueError("min_error_asymptotic: requires k < n")
    if k / n > 0.1:
        warnings.warn(
            f"k/n = {k}/{n} is outside the k/n << 1 validity regime",
            AsymptoticRegimeWarning,
            stacklevel=2,
        )
    c = float(instance.c)
    q = 1 - c * c
    value = q**k + 2 * k * c * q ** (k - 0.5) / math.sqrt(n)
    return ProtocolResult(value=value, method="asymptotic", instance=instance)


def explicit_success_k123(instance: ProblemInstance) -> ProtocolResult:
    """Hand-expanded minimum-error closed forms for k = 1, 2, 3.

    Written out term by term (one term per distinct eigenvalue) with
    explicit binomial coefficients; agrees with min_error_success to
    machine precision.
    """
    n, k = instance.n, instance.k
    z = float(instance.c2)
    s = math.sqrt
    if k == 1:
        amp = (n - 1) * s(1 - z) + s(1 + (n - 1) * z)
        value = amp * amp / n**2
    elif k == 2:
        if n < 3:
            raise ValueError("explicit_success_k123: k=2 needs n >= 3")
        amp = (
            (n - 3) / (n - 1) * (1 - z)
            + 2 / n * s(1 - z) * s(1 + (n - 3) * z)
            + 2 / (n * (n - 1)) * s(1 + 2 * (n - 2) * z + binomial(n - 2, 2) * z * z)
        )
        value = amp * amp
    elif k == 3:
        if n < 5:
            raise ValueError("explicit_success_k123: k=3 needs n >= 5")
        amp = (
            (n - 5) / (n - 2) * (1 - z) ** 1.5
            + 3 * (n - 3) / ((n - 1) * (n - 2)) * (1 - z) * s(1 + (n - 5) * z)
            + 6 / (n * (n - 2)) * s(1 - z)
            * s(1 + 2 * (n - 4) * z + binomial(n - 4, 2) * z * z)
            + 6 / (n * (n - 1) * (n - 2))
            * s(1 + 3 * (n - 3) * z + 3 * binomial(n - 3, 2) * z * z
                + binomial(n - 3, 3) * z**3)
        )
        value = amp * amp
    else:
        raise ValueError(f"explicit_success_k123: k must be 1, 2 or 3, got {k}")
    return ProtocolResult(value=value, method="closed-form", instance=instance)


def unambiguous_success(instance: ProblemInstance) -> ProtocolResult:
    """Optimal zero-error success probability (1-c^2)^k = lambda_min(G)."""
    value = float((1 - Fraction(instance.c2)) ** instance.k)
    return ProtocolResult(value=value, method="closed-form", instance=instance)


def verify_unambiguous_certificates(
    instance: ProblemInstance, tol: float = 1e-10
) -> CertificateReport:
    """Check the primal/dual optimality certificates of the zero-error value.

    Primal: the ansatz with all conditional probabilities equal to
    lambda_min is feasible iff G - lambda_min * I is PSD.  Dual: the
    witness Y = (N/m_k) E_k built from the minimal-eigenspace projector
    has unit diagonal (exact), is PSD, and gives tr(G Y)/N = lambda_min.
    Endpoints c = 0 and c = 1 are handled analytically.
    """
    n, k = instance.n, instance.k
    N = instance.N
    c = float(instance.c)
    if c == 0.0:
        return CertificateReport(True, True, 1.0, 1.0, 0.0)
    if c == 1.0:
        # identical hypotheses: zero-error value collapses to 0
        return CertificateReport(True, True, 0.0, 0.0, 0.0)

    lam_min = float((1 - Fraction(instance.c2)) ** k)
    G = np.array(gram_matrix(instance), dtype=float)
    scale = max(1.0, np.abs(G).max())

    shifted_min = direct_spectrum(G - lam_min * np.eye(N))[-1]
    primal_feasible = bool(shifted_min >= -tol * scale)

    m_k = multiplicity(n, k)
    E_k = scheme_projector_exact(n, k, k)
    diag_ok = all(E_k[a][a] * N == m_k for a in range(N))  # diag(Y) = 1 exactly
    Y = np.array(E_k, dtype=float) * (N / m_k)
    y_min = direct_spectrum(Y)[-1]
    dual_value = float(np.tensordot(G, Y) / N)
    dual_feasible = bool(diag_ok and y_min >= -tol)

    return CertificateReport(
        primal_feasible=primal_feasible,
        dual_feasible=dual_feasible,
        primal_value=lam_min,
        dual_value=dual_value,
        gap=abs(lam_min - dual_value),
    )
