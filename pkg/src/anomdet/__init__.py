"""Optimal identification of anomalous states in a series of preparations.

Closed-form success probabilities (minimum-error, zero-error, and the
states-unknown universal protocol) built on the association scheme of
k-subsets, with independent brute-force linear-algebra oracles for every
closed form.
"""

from .combin import (
    binomial,
    enumerate_patterns,
    pattern_distance,
    pattern_rank,
    pattern_unrank,
)
from .gram import (
    ProblemInstance,
    Spectrum,
    closed_form_spectrum,
    direct_spectrum,
    gram_matrix,
    matrix_sqrt,
)
from .johnson import (
    Eigenmatrices,
    SchemeBasis,
    adjacency_matrix,
    dual_hahn_polynomial,
    eigenmatrices,
    hahn_polynomial,
    scheme_basis,
    scheme_projector,
    verify_bose_mesner_closure,
)
from .protocols import (
    CertificateReport,
    ProtocolResult,
    explicit_success_k123,
    min_error_asymptotic,
    min_error_success,
    unambiguous_success,
    verify_unambiguous_certificates,
)
from .universal import (
    IrrepDims,
    UniversalInstance,
    average_known_success,
    average_min_error_curve,
    irrep_dimensions,
    universal_asymptote,
    universal_success,
)
from .oracle import (
    holevo_check,
    hypothesis_state,
    sample_measurement,
    srm_success_oracle,
    symmetric_projector,
    universal_hypothesis,
    universal_success_oracle,
)

__version__ = "0.1.0"
