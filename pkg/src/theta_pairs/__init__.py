"""Certified pairs of theta-congruent numbers in a fixed ratio.

For an angle theta with rational cosine s/r and a coprime square-free pair
(k, l), this package constructs pairs (N_x, N_y) of square-free integers,
each theta-congruent with an explicit witness triangle, satisfying
l*N_x = k*N_y exactly.  All arithmetic is exact rational arithmetic.

Modules: exact_arith (valuations, factorization, square-free parts),
curve_model (the plane cubic and its Weierstrass model), ec_group
(chord-and-tangent group law), birational_maps (transforms both ways),
valuation_filter (the acceptance filters), pair_generator (the pipeline and
the certificate verifier), cli (the theta-pairs command).
"""

from .curve_model import (
    Angle,
    AngleOutOfRange,
    CurveConfig,
    ECPoint,
    EqualRatio,
    HolmPoint,
    INFINITY,
    NotCoprime,
    NotOnCurve,
    NotReduced,
    NotSquarefree,
    discriminant,
    ec_contains,
    holm_contains,
    j_invariant,
    make_angle,
    make_config,
    nine_points,
    tangent_point_p0,
)
from .birational_maps import (
    DegeneratePoint,
    ExceptionalPoint,
    areas,
    from_jacobian,
    tangent_point_image,
    to_jacobian,
)
from .exact_arith import (
    EffortExceeded,
    FactorBudget,
    NonPositiveInput,
    NonPrimeModulus,
    SquarefreeDecomposition,
    ZeroInput,
    factorize,
    format_rational,
    ord_p,
    parse_rational,
    squarefree_part,
)
from .pair_generator import (
    BudgetExhausted,
    NonPositiveArea,
    NoSeedFound,
    PairCertificate,
    ThetaTriangle,
    VerificationResult,
    find_seed,
    generate_pairs,
    iter_pairs,
    scale_triangle,
    triangle_from_x,
    verify_certificate,
)
from .valuation_filter import FilterReport, InfinitePoint, evaluate_filters, in_U

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "AngleOutOfRange",
    "BudgetExhausted",
    "CurveConfig",
    "DegeneratePoint",
    "ECPoint",
    "EffortExceeded",
    "EqualRatio",
    "ExceptionalPoint",
    "FactorBudget",
    "FilterReport",
    "HolmPoint",
    "INFINITY",
    "InfinitePoint",
    "NoSeedFound",
    "NonPositiveArea",
    "NonPositiveInput",
    "NonPrimeModulus",
    "NotCoprime",
    "NotOnCurve",
    "NotReduced",
    "NotSquarefree",
    "PairCertificate",
    "SquarefreeDecomposition",
    "ThetaTriangle",
    "VerificationResult",
    "ZeroInput",
    "areas",
    "discriminant",
    "ec_contains",
    "evaluate_filters",
    "factorize",
    "find_seed",
    "format_rational",
    "from_jacobian",
    "generate_pairs",
    "holm_contains",
    "in_U",
    "iter_pairs",
    "j_invariant",
    "make_angle",
    "make_config",
    "nine_points",
    "ord_p",
    "parse_rational",
    "scale_triangle",
    "squarefree_part",
    "tangent_point_image",
    "tangent_point_p0",
    "to_jacobian",
    "triangle_from_x",
    "verify_certificate",
]
