"""Exact solver for uni-parametric linear complementarity problems.

Convex quadratic and linear programs with one parameter are handled through
their KKT reformulation.
"""

from .estimators import UpLcpSolver, UpQpSolver
from .exceptions import AssumptionViolation, InvariantError, ParseError, SingularBasisError, UpsolveError
from .instances import ParamInterval, UpLcpInstance
from .io import emit_plot_data, generate_sufficient_instance, parse_instance, write_instance, write_partition
from .lcp import ComplementaryBasis, FixedLcp, LcpOutcome, criss_cross, fix_theta
from .paramlinalg import AffineScalar, ParamMatrix, cramer_numerators, param_determinant
from .polyring import AlgebraicNumber, IsolatedRoot, Poly, isolate_real_roots, square_free_decomposition
from .reformulate import QpSolutionPiece, UpQpInstance, lp_to_lcp, map_solution_back, qp_to_lcp
from .solver import BasisCache, IntervalPiece, Partition, SolverOptions, get_extremes, solve_uplcp

__version__ = "0.1.0"

__all__ = [
    "AffineScalar", "AlgebraicNumber", "AssumptionViolation", "BasisCache", "ComplementaryBasis",
    "FixedLcp", "IntervalPiece", "InvariantError", "IsolatedRoot", "LcpOutcome", "ParamInterval",
    "ParamMatrix", "ParseError", "Partition", "Poly", "QpSolutionPiece", "SingularBasisError",
    "SolverOptions", "UpLcpInstance", "UpLcpSolver", "UpQpInstance", "UpQpSolver", "UpsolveError",
    "cramer_numerators", "criss_cross", "emit_plot_data", "fix_theta", "generate_sufficient_instance",
    "get_extremes", "isolate_real_roots", "lp_to_lcp", "map_solution_back", "param_determinant",
    "parse_instance", "qp_to_lcp", "solve_uplcp", "square_free_decomposition", "write_instance",
    "write_partition",
]
