"""Exact symbolic checks for graded bundles and homogeneity structures."""

from .jets import JetElement, gk_compose, gk_inverse, weil_endo
from .parsing import ParseError, parse_expr
from .polynomial import Polynomial, RationalExpr, Variable, substitute
from .structures import (
    ActionFamily,
    CheckResult,
    GradedSignature,
    complexes,
    gk_monoid,
    m2_monoid,
    reals,
    standard_homothety,
    verify_action,
)

__version__ = "0.1.0"

__all__ = [
    "ActionFamily", "CheckResult", "GradedSignature", "JetElement", "ParseError", "Polynomial",
    "RationalExpr", "Variable", "complexes", "gk_compose", "gk_inverse", "gk_monoid",
    "m2_monoid", "parse_expr", "reals", "standard_homothety", "substitute", "verify_action",
    "weil_endo",
]
