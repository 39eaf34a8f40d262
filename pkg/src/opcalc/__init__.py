"""Algebraic operational calculus over a truncated formal-series field,
with closed-form solving of Bessel-type equations."""

from .coefficients import ExactComplex
from .series import FormalSeries, basis, geometric, zero, DEFAULT_TRUNCATION
from .ratfun import (Poly, FactoredPoly, RationalOperator,
                     PartialFractionTerm, find_roots, partial_fractions,
                     rational_to_series)
from .transform import (EquationSpec, SolutionAtom, SolutionExpression,
                        TransformedEquation, forward_basis, forward_equation,
                        inverse_transform, forward_expression,
                        atom_to_series, expression_to_series, table_rows)
from .besseval import p_eval, eval_series, bessel_atom_eval, apply_Lnu_series
from .solver import SolveReport, solve, verify, decompose_space
from . import errors

__all__ = [
    "ExactComplex", "FormalSeries", "basis", "geometric", "zero",
    "DEFAULT_TRUNCATION", "Poly", "FactoredPoly", "RationalOperator",
    "PartialFractionTerm", "find_roots", "partial_fractions",
    "rational_to_series", "EquationSpec", "SolutionAtom",
    "SolutionExpression", "TransformedEquation", "forward_basis",
    "forward_equation", "inverse_transform", "forward_expression",
    "atom_to_series", "expression_to_series", "table_rows", "p_eval",
    "eval_series", "bessel_atom_eval", "apply_Lnu_series", "SolveReport",
    "solve", "verify", "decompose_space", "errors",
]

__version__ = "0.1.0"
