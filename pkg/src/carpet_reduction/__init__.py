"""Exact finite-depth constructions of carpet homeomorphisms.

Everything geometric is done in ``fractions.Fraction``.  The package builds
deballing recipes, the trapezoid flow on the square, a family of
piecewise-linear paths on the strip, the reduction maps and the conjugator
between them, and checks each construction against its invariants.
"""

from .checks import CheckResult
from .geometry import Box, DomainError, LInfBall, PLPath, Point, VSTrapezoid
from .regions import Region
from .deballing import (
    ChartedBox, DeballingRecipe, ValidationReport, carpet_membership, coverage_fraction,
    pullback_recipe, seed_recipe_box, union_recipes, validate_recipe,
)
from .square_flow import (
    DEFAULT_FLOW, SquareFlow, WindowExceeded, column_x, partial_sum, pi_on_unit_square,
    s_seq, trapezoid,
)
from .strip_paths import (
    ConstructionFailure, PathFamilyState, build_family, distortion_check, fiberwise_shift,
    fiberwise_shift_inv, pair_enum, pair_index, verify_family,
)
from .reduction import (
    GroupElement, NonConvergence, RecipeWindow, assemble_carpet_recipe, build_sigma,
    conjugacy_check, continuity_n0, extract_offsets, locate_cell, rho_apply, rho_inverse,
    sigma_apply, sigma_inverse, tau_apply, tau_inverse, trapezoid_envelope_check,
)

__all__ = [
    "CheckResult", "Box", "DomainError", "LInfBall", "PLPath", "Point", "VSTrapezoid",
    "Region", "ChartedBox", "DeballingRecipe", "ValidationReport", "carpet_membership",
    "coverage_fraction", "pullback_recipe", "seed_recipe_box", "union_recipes",
    "validate_recipe", "DEFAULT_FLOW", "SquareFlow", "WindowExceeded", "column_x",
    "partial_sum", "pi_on_unit_square", "s_seq", "trapezoid", "ConstructionFailure",
    "PathFamilyState", "build_family", "distortion_check", "fiberwise_shift",
    "fiberwise_shift_inv", "pair_enum", "pair_index", "verify_family", "GroupElement",
    "NonConvergence", "RecipeWindow", "assemble_carpet_recipe", "build_sigma",
    "conjugacy_check", "continuity_n0", "extract_offsets", "locate_cell", "rho_apply",
    "rho_inverse", "sigma_apply", "sigma_inverse", "tau_apply", "tau_inverse",
    "trapezoid_envelope_check",
]
