"""Quadratic factors of quadrinomials ``x^n + a x^m + b x^k + c`` over Q."""

from .arith import as_rational, fmt, height
from .bipoly import BiPoly, parse_bipoly, resultant_p
from .curves import CurvePoint, get_curve, load_catalog, load_curve_file, points_to_solutions
from .families import (family_member, family_members, get_case, isolated_solutions, members,
                       verify_paper)
from .modred import ModRedPair, mod_red
from .solver import (Pattern, QuadraticFactor, Quadrinomial, eliminate, find_quadratic_factors,
                     pattern_sweep)
from .upoly import UPoly, parse_poly, rational_roots

__version__ = "0.1.0"

__all__ = [
    "BiPoly", "CurvePoint", "ModRedPair", "Pattern", "QuadraticFactor", "Quadrinomial", "UPoly",
    "as_rational", "eliminate", "family_member", "family_members", "find_quadratic_factors",
    "fmt", "get_case", "get_curve", "height", "isolated_solutions", "load_catalog",
    "load_curve_file", "members", "mod_red", "parse_bipoly", "parse_poly", "pattern_sweep",
    "points_to_solutions", "rational_roots", "resultant_p", "verify_paper",
]
