"""Computable structure for the algebra of absolutely continuous functions
with p-integrable derivative on (0, 1], and its multipliers.

Layers: symbolic piecewise power-log functions (funcspace, expr), singular
quadrature with certified tails (quadrature), the Banach-algebra operations
(algebra), and the multiplier decision engine (multipliers).  Evaluation hot
loops run in a compiled kernel when available (see acp.kernels).
"""

__version__ = "0.1.0"

from .exponents import INF, ONE, TWO, Exponent, gap_exponent
from .expr import ExpressionError, ealpha, format_function, parse
from .funcspace import (
    AsymptoticOrder,
    DomainError,
    LpVerdict,
    PiecewiseFunction,
    PowLogTerm,
    TermSum,
    classify_lp_at_zero,
    differentiate,
    dominant_order,
    evaluate,
    multiply,
)
from .quadrature import (
    NormResult,
    QuadResult,
    DivergentIntegralError,
    hardy_ratio,
    integral_from_zero,
    lp_norm_full,
    lp_norm_on,
)
from .algebra import (
    AidReport,
    MembershipError,
    MembershipReport,
    aid_defect,
    approximate_identity,
    banach_norm,
    eq1_check,
    inclusion_check,
    membership,
    no_aid_witness,
    product_norm_check,
)
from .multipliers import (
    DirectOutcome,
    DyadicProfile,
    GrowthFit,
    MultiplierVerdict,
    Route,
    Verdict,
    direct_check,
    dyadic_profile,
    iff_check_p_equals_r,
    necessary_check,
    operator_norm_bounds,
    sufficient_check,
    verdict,
)

__all__ = [
    "__version__",
    "Exponent", "ONE", "TWO", "INF", "gap_exponent",
    "parse", "format_function", "ealpha", "ExpressionError",
    "PowLogTerm", "TermSum", "PiecewiseFunction", "AsymptoticOrder", "LpVerdict",
    "DomainError", "differentiate", "multiply", "evaluate", "dominant_order",
    "classify_lp_at_zero",
    "QuadResult", "NormResult", "DivergentIntegralError",
    "lp_norm_on", "lp_norm_full", "integral_from_zero", "hardy_ratio",
    "MembershipReport", "AidReport", "MembershipError",
    "membership", "banach_norm", "eq1_check", "product_norm_check",
    "approximate_identity", "aid_defect", "no_aid_witness", "inclusion_check",
    "Verdict", "Route", "DirectOutcome", "DyadicProfile", "GrowthFit",
    "MultiplierVerdict", "dyadic_profile", "necessary_check", "sufficient_check",
    "iff_check_p_equals_r", "direct_check", "verdict", "operator_norm_bounds",
]
