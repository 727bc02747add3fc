"""Exact Askey-Wilson relations for Leonard pairs.

Parameter arrays, their split-form matrices, the closed-form and linear-solve
computations of the Askey-Wilson coefficient tuple, affine normalization,
type classification, and generators for every normalized family.
"""

from .aw_relations import (
    AW_NAMES,
    AffineMap,
    AwCoefficients,
    AwTag,
    AwType,
    NormalizationResult,
    classify,
    normalize_translation,
    pinned_scaling_targets,
    q_sequence,
    transform,
)
from .errors import LeonardError
from .exact_field import Fraction, GaussianRational, I, format_scalar, parse_scalar
from .families import (
    Family,
    FamilySpec,
    ScalingConversion,
    expected_aw,
    generate,
    invariant_reparams,
    l6_from_l5,
    relative_spec,
    scaling_conversion,
    sqrt_sign_conversion,
)
from .linalg import Matrix, aw_residuals, solve_aw_coefficients
from .parameter_array import (
    ParameterArray,
    RelationOp,
    affine_apply,
    aw_coefficients,
    relation,
    split1,
    split2,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "LeonardError",
    "Fraction",
    "GaussianRational",
    "I",
    "format_scalar",
    "parse_scalar",
    "Matrix",
    "aw_residuals",
    "solve_aw_coefficients",
    "AW_NAMES",
    "AffineMap",
    "AwCoefficients",
    "AwTag",
    "AwType",
    "NormalizationResult",
    "classify",
    "normalize_translation",
    "pinned_scaling_targets",
    "q_sequence",
    "transform",
    "Family",
    "FamilySpec",
    "ScalingConversion",
    "expected_aw",
    "generate",
    "invariant_reparams",
    "l6_from_l5",
    "relative_spec",
    "scaling_conversion",
    "sqrt_sign_conversion",
    "ParameterArray",
    "RelationOp",
    "affine_apply",
    "aw_coefficients",
    "relation",
    "split1",
    "split2",
    "validate",
]
