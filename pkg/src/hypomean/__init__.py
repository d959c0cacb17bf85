"""Exact-arithmetic construction and positivity certification of weighted
mean matrices: finite sections of M, its auxiliary factor B, the
interrupter P = B*B, and Q = I - P, together with a tridiagonal pivot
certification of Q_N > 0 and symbolic induction certificates for linear
weight families."""

from .weights import (
    FactorableGenerators,
    HypothesisCheck,
    HypothesisReport,
    LinearWeights,
    TableWeights,
    WeightSequence,
    check_hypotheses,
    parse_weight_spec,
)
from .matrices import (
    ExactMatrix,
    MatrixKind,
    b_entry,
    finite_section,
    fraction_str,
    m_entry,
    offdiag_factors,
    p_entry_closed,
    p_entry_oracle,
    q_closed_odd,
    q_entry,
)
from .positivity import (
    BoundReport,
    CertificationReport,
    CertifyOptions,
    DegenerateFactorError,
    DeltaSequence,
    StructureError,
    TridiagonalForm,
    Verdict,
    certify,
    check_delta_bounds,
    d_closed_odd,
    delta_final_lower_bound_odd,
    delta_lower_bound_odd,
    delta_sequence,
    elimination_multiplier,
    leading_minors,
    s_closed_odd,
    tridiagonalize,
    z_closed_odd,
)
from .polynomials import Polynomial, RationalFunction, count_roots_above, poly_gcd
from .symbolic import (
    CertificateInconclusive,
    DegreeReport,
    InductionCertificate,
    ODD_CERTIFICATE_REFERENCE,
    SymbolicQ,
    SymbolicStructureError,
    SymbolicTridiagonal,
    degree_report,
    induction_certificate,
    odd_delta_floor,
    partial_sum_poly,
    power_sum,
    proportionality_ratio,
    reference_ratio_odd,
    symbolic_q,
    symbolic_tridiagonal,
)

__version__ = "0.1.0"
