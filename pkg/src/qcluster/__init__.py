"""Exact arithmetic for acyclic quantum cluster algebras with principal coefficients."""

from .coeffring import QLaurent, q_half, q_power, qbinom, qint, ql_exact_div
from .errors import (
    AccumulationMismatch,
    DivisionByZero,
    FindingError,
    Incompatible,
    InvalidArgs,
    InvariantViolation,
    MismatchWithDirectComputation,
    NotAcyclic,
    NotAdmissible,
    NotASingleTerm,
    NotDivisible,
    NotInSpan,
    NotPrincipal,
    NotSkewSymmetrizable,
    QClusterError,
    ShapeMismatch,
    SupportViolation,
    ZeroElement,
)
from .projective import (
    ProjectiveFamily,
    closed_form_check,
    compute_family,
    exchange_relation,
    first_term_closed_form,
    lower_bound_generators,
    one_step_closed_form,
)
from .qseed import (
    CompatiblePair,
    QuantumSeed,
    admissible_order,
    check_compatible,
    frame_monomial,
    initial_seed,
    is_acyclic,
    mutate_lambda,
    mutate_matrixB,
    mutate_seed,
    mutate_sequence,
    permute_seed,
    principal_pair,
)
from .qtorus import SkewForm, TorusElement, first_monomial, te_exact_div_right, te_mul
from .straighten import (
    PSMExpansion,
    StraighteningCertificate,
    comm_same_index,
    psm_evaluate,
    straighten_general,
    straighten_power,
    to_projective_standard,
    to_standard_monomials,
)

__version__ = "0.1.0"
