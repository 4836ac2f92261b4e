"""Slope-constrained drawings of complete graphs.

Exact slope geometry and the dual quadruple, slope-generic point sets built
from B_h-sequences, the CLIQUE to SCGD encoding with witness checking, and
affinely-regular polygon solvers for the restricted problem.
"""
from .errors import BudgetError, PreconditionError, ScgdError
from .geometry import EPS, AffineMap, Homothety, Point, Slope, SlopeSet, dual, embeds, find_homothety, q_poly, slope_set
from .sidon import BhSequence, greedy_bh, verify_bh
from .generic import GenericSet, build_generic, check_slope_generic
from .reduction import Graph, ScgdInstance, Witness, encode_clique, verify_witness, solve_from_witness
from .affreg import AffRegPolygon, four_points_query, four_slopes_query, regular_ngon, slope_profile
from .solver import SolverAnswer, SolverConfig, brute_force_scgd, solve_monte_carlo, solve_restricted, solve_small

__version__ = "0.1.0"

__all__ = [
    "AffRegPolygon", "AffineMap", "BhSequence", "BudgetError", "EPS", "GenericSet", "Graph",
    "Homothety", "Point", "PreconditionError", "ScgdError", "ScgdInstance", "Slope", "SlopeSet",
    "SolverAnswer", "SolverConfig", "Witness", "brute_force_scgd", "build_generic",
    "check_slope_generic", "dual", "embeds", "encode_clique", "find_homothety", "four_points_query",
    "four_slopes_query", "greedy_bh", "q_poly", "regular_ngon", "slope_profile", "slope_set",
    "solve_from_witness", "solve_monte_carlo", "solve_restricted", "solve_small", "verify_bh",
    "verify_witness",
]
