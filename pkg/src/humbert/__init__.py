"""Verification-grade toolkit for the seven Humbert double hypergeometric
functions.

Three layers:

* numeric evaluation of the double series and their one-variable
  degenerations (`eval_double_series`, `eval_single_series`);
* exact symbolic machinery — truncated bivariate power series over the
  rationals, the diagonal parameter-shift operators and their inverses, a
  declarative expression assembler, and a shipped catalog of decomposition
  formulas and operator identities verified coefficient-by-coefficient
  (`verify_formula`, `verify_operator_identity`, `verify_all`);
* Euler-type integral representations cross-checked against the series by
  tanh-sinh quadrature (`eval_integral`, `cross_check`).
"""

from .catalog import (
    get_formula,
    load_catalog,
    load_errata,
    save_catalog,
    verify_all,
    verify_formula,
)
from .errors import (
    ConstraintViolation,
    DomainError,
    HumbertError,
    NoConvergence,
    NonConvergence,
    PoleError,
    SignatureError,
    UnknownFormula,
    UnknownIdentity,
    UnsupportedTransform,
)
from .expressions import assemble_expression, eval_affine, parse_affine
from .identities import (
    IDENTITIES,
    verify_all_identities,
    verify_operator_identity,
)
from .operators import (
    DiagonalAction,
    apply_H,
    apply_H_bar,
    apply_delta_op,
    apply_nabla,
    apply_nabla_delta,
)
from .profiles import load_config, profile_params, resolved_params
from .quadrature import (
    REP_IDS,
    REPS,
    IntegralRep,
    QuadratureSpec,
    cross_check,
    eval_integral,
)
from .reports import VerificationReport, sort_reports
from .series import (
    BIVARIATE_KINDS,
    KINDS,
    SINGLE_KINDS,
    FunctionRef,
    TruncatedBiseries,
    eval_double_series,
    eval_single_series,
    triangle_from_json,
    triangle_to_json,
    truncated_series,
)

__version__ = "0.1.0"

__all__ = [
    "BIVARIATE_KINDS",
    "ConstraintViolation",
    "DiagonalAction",
    "DomainError",
    "FunctionRef",
    "HumbertError",
    "IDENTITIES",
    "IntegralRep",
    "KINDS",
    "NoConvergence",
    "NonConvergence",
    "PoleError",
    "QuadratureSpec",
    "REPS",
    "REP_IDS",
    "SINGLE_KINDS",
    "SignatureError",
    "TruncatedBiseries",
    "UnknownFormula",
    "UnknownIdentity",
    "UnsupportedTransform",
    "VerificationReport",
    "apply_H",
    "apply_H_bar",
    "apply_delta_op",
    "apply_nabla",
    "apply_nabla_delta",
    "assemble_expression",
    "cross_check",
    "eval_affine",
    "eval_double_series",
    "eval_integral",
    "eval_single_series",
    "get_formula",
    "load_catalog",
    "load_config",
    "load_errata",
    "parse_affine",
    "profile_params",
    "resolved_params",
    "save_catalog",
    "sort_reports",
    "triangle_from_json",
    "triangle_to_json",
    "truncated_series",
    "verify_all",
    "verify_all_identities",
    "verify_formula",
    "verify_operator_identity",
    "__version__",
]
