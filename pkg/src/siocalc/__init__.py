"""Symbol calculus for singular integral operators aP + bQ with
piecewise-continuous coefficients on weighted variable-exponent
Lebesgue spaces over closed curves, cross-validated by a finite-section
engine on the unit circle."""

from .errors import (
    AlignmentError,
    DegenerateSymbolError,
    HypothesisViolatedError,
    InsufficientTruncationError,
    InvalidCurveError,
    NumericFailureError,
    PointOffCurveError,
    SceneError,
    SingularSymbolError,
    SioError,
    UnsupportedEntryError,
)
from .geometry import (
    CurveModel,
    ExponentPiece,
    KhvedelidzeWeight,
    SpaceContext,
    VariableExponent,
    carleson_constant,
    check_dini_lipschitz,
    check_khvedelidze,
    s_boundedness,
    whirl_exponent,
)
from .vlebesgue import (
    SampledFunction,
    conjugate_exponent,
    duality_pairing,
    embedding_epsilon,
    hoelder_check,
    luxemburg_norm,
    modular,
)
from .symbols import (
    ConstPiece,
    FuncPiece,
    MatrixSymbol,
    PCSymbol,
    TrigPiece,
    essential_invertibility,
    is_nonsingular,
    jump_set,
    one_sided_limits,
    symbol_algebra,
)
from .circle_engine import (
    FourierTruncation,
    ModeVector,
    OpExpr,
    SpectralReport,
    adjoint_residual,
    assemble,
    cauchy_pv,
    compactness_profile,
    h_involution_apply,
    identity_residual,
    multiplication_matrix,
    operator_section,
    pair_section_builder,
    random_invertible_coeffs,
    riesz_apply,
    riesz_matrices,
    spectral_report,
    winding_number,
)
from .dilation import AlgebraElement, DilationResult, dilate, verify_dilation_identity
from .fredholm import (
    Classification,
    CriterionValue,
    classify_algebra_element,
    classify_element_direct,
    classify_pair,
    classify_scalar,
    closed_range_scalar,
    criterion_value,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AlignmentError",
    "Classification",
    "ConstPiece",
    "CriterionValue",
    "CurveModel",
    "DegenerateSymbolError",
    "DilationResult",
    "ExponentPiece",
    "FourierTruncation",
    "FuncPiece",
    "HypothesisViolatedError",
    "InsufficientTruncationError",
    "InvalidCurveError",
    "KhvedelidzeWeight",
    "MatrixSymbol",
    "ModeVector",
    "NumericFailureError",
    "OpExpr",
    "PCSymbol",
    "PointOffCurveError",
    "SampledFunction",
    "SceneError",
    "SingularSymbolError",
    "SioError",
    "SpaceContext",
    "SpectralReport",
    "TrigPiece",
    "UnsupportedEntryError",
    "VariableExponent",
    "adjoint_residual",
    "assemble",
    "carleson_constant",
    "cauchy_pv",
    "check_dini_lipschitz",
    "check_khvedelidze",
    "classify_algebra_element",
    "classify_element_direct",
    "classify_pair",
    "classify_scalar",
    "closed_range_scalar",
    "compactness_profile",
    "conjugate_exponent",
    "criterion_value",
    "dilate",
    "duality_pairing",
    "embedding_epsilon",
    "essential_invertibility",
    "h_involution_apply",
    "hoelder_check",
    "identity_residual",
    "is_nonsingular",
    "jump_set",
    "luxemburg_norm",
    "modular",
    "multiplication_matrix",
    "one_sided_limits",
    "operator_section",
    "pair_section_builder",
    "random_invertible_coeffs",
    "riesz_apply",
    "riesz_matrices",
    "s_boundedness",
    "spectral_report",
    "symbol_algebra",
    "verify_dilation_identity",
    "whirl_exponent",
    "winding_number",
]
