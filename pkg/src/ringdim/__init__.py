"""Exact Krull dimension computations for affine algebras, their
localizations, and tensor products of field extensions.

The Groebner kernel computes dimensions outright whenever a ring expression
flattens to an affine presentation; a symbolic rule layer handles the
shapes it cannot materialize (transcendental tensor legs, infinite
transcendence degree) and cross-checks against the kernel wherever both
apply.  Prime-chain certificates make the lower bounds independently
re-checkable.
"""

from .calculus import (
    BaseField,
    DimensionResult,
    FieldExt,
    FieldExtensionDescriptor,
    FracField,
    LocElement,
    LocSubringComplement,
    PolyExt,
    Quotient,
    RingExpr,
    Tensor,
    TraceEntry,
    evaluate,
    faithfully_flat_lower_bound,
    field_tensor_dimension,
    flatten_affine,
    integral_extension_rule,
    tensor_equality,
    tensor_flatten_affine,
    tensor_infinite_applicable,
    tensor_lower_bound,
    tensor_upper_bound,
    trdeg_of,
)
from .chains import (
    ChainCertificate,
    ChainStepEvidence,
    PrimalityCertificate,
    build_chain,
    certified_lower_bound,
    verify_algebraic_independence,
    verify_avoidance,
    verify_avoidance_by_evaluation,
    verify_chain,
    verify_substitution_transfer,
)
from .dimension import (
    INF,
    AffineAlgebra,
    DimensionValue,
    Infinity,
    ZeroDivisorStatus,
    dim_affine,
    dim_generic_fiber,
    dim_localization,
    dim_poly_localization,
    height_of_prime,
    independent_set_dimension,
    is_zero_divisor,
    rabinowitsch_presentation,
    trdeg_affine_domain,
    zero_divisor_status,
)
from .errors import (
    BudgetExhaustedError,
    CertificateError,
    EmptyRingError,
    InconsistentBoundsError,
    ParseError,
    RingMismatchError,
    TowerDepthError,
    VariableCapError,
    ZeroPolynomialError,
)
from .fields import (
    PrimeField,
    QQ,
    RatFunc,
    RationalField,
    RationalFunctionField,
    normalize_rational_function,
)
from .ideals import (
    Budget,
    DEFAULT_PAIR_BUDGET,
    IdealPresentation,
    buchberger,
    eliminate,
    ideal_membership,
    ideal_quotient,
    normal_form,
    s_polynomial,
    saturate,
)
from .orderings import GREVLEX, LEX, BlockElimination, GrevLex, Lex, compare
from .parser import (
    format_field,
    format_ring_expr,
    parse_polynomial,
    parse_ring_expr,
)
from .polynomials import (
    MAX_TOTAL_VARIABLES,
    Polynomial,
    PolynomialRing,
    exact_divide,
    format_polynomial,
    polynomial_gcd,
)

__version__ = "0.1.0"
