"""Exact coefficient arithmetic and formal-variable polynomial calculus."""
from .formal import D, LAM, MU, VARS, Dp, FormalPoly, Lp, Mp, substitute, sum_polys
from .linsolve import Inconsistent, LinearEquation, SolutionSpace, residuals, solve_linear
from .literal import LiteralError, parse_formal, parse_scalar
from .scalar import ONE, ZERO, Scalar, ZeroDenominator, normalize, poly_ring

__all__ = [
    "D", "LAM", "MU", "VARS", "Dp", "Lp", "Mp", "FormalPoly", "substitute", "sum_polys",
    "Inconsistent", "LinearEquation", "SolutionSpace", "residuals", "solve_linear",
    "LiteralError", "parse_formal", "parse_scalar",
    "ONE", "ZERO", "Scalar", "ZeroDenominator", "normalize", "poly_ring",
]
