"""Capped power-penalty approximations of count-penalized least squares.

The exact objective ``fit(x) + lam * nnz(B x)`` is combinatorial; replacing
the count with the bounded surrogate ``sum_i min(gamma |.|^p, 1)`` gives a
continuous approximation that converges to it as ``gamma`` grows, and becomes
exactly equivalent beyond a computable threshold for several data fits.  The
package provides the objective evaluations, exhaustive desk-scale oracles,
the piecewise-linear structure of the optimum over the penalty weight, the
exactness thresholds, a block-coordinate continuation solver with a
scikit-learn estimator front end, and a CLI.
"""

from .capped import CappedParams, capped_scalar, capped_sum, scalar_marginal, split_argmin_scalar
from .errors import CapacityError, InputError, ProblemFormatError, UnsupportedConfigError
from .estimator import CompositeL0Regression
from .linalg import (
    NullBasis,
    constrained_least_squares,
    least_squares,
    null_space_basis,
    subset_min_singular_value,
)
from .oracle import (
    Minimizer,
    OracleResult,
    min_capped,
    min_constrained,
    min_l0,
    min_l0_l0,
    min_l0_l0_penalized,
)
from .path import (
    PathBreakpoints,
    SparsityLevels,
    build_breakpoints,
    build_levels,
    optimal_set,
    optimal_value,
)
from .problem import (
    DEFAULT_TOL_ZERO,
    FiniteSet,
    L0Affine,
    LeastSquares,
    ProblemInstance,
    capped_objective,
    count_nonzeros,
    l0_objective,
    split_objective,
)
from .serialize import parse_problem, parse_problem_file, problem_to_dict, write_problem_file
from .solver import SolveReport, SolverConfig, bcd_solve, continuation_schedule, continuation_solve
from .thresholds import (
    BoundCertificate,
    FiniteSetThreshold,
    L0L0Threshold,
    finite_set_threshold,
    kernel_bound_certificate,
    l0_l0_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCertificate",
    "CapacityError",
    "CappedParams",
    "CompositeL0Regression",
    "DEFAULT_TOL_ZERO",
    "FiniteSet",
    "FiniteSetThreshold",
    "InputError",
    "L0Affine",
    "L0L0Threshold",
    "LeastSquares",
    "Minimizer",
    "NullBasis",
    "OracleResult",
    "PathBreakpoints",
    "ProblemFormatError",
    "ProblemInstance",
    "SolveReport",
    "SolverConfig",
    "SparsityLevels",
    "UnsupportedConfigError",
    "bcd_solve",
    "build_breakpoints",
    "build_levels",
    "capped_objective",
    "capped_scalar",
    "capped_sum",
    "constrained_least_squares",
    "continuation_schedule",
    "continuation_solve",
    "count_nonzeros",
    "finite_set_threshold",
    "kernel_bound_certificate",
    "l0_l0_threshold",
    "l0_objective",
    "least_squares",
    "min_capped",
    "min_constrained",
    "min_l0",
    "min_l0_l0",
    "min_l0_l0_penalized",
    "null_space_basis",
    "optimal_set",
    "optimal_value",
    "parse_problem",
    "parse_problem_file",
    "problem_to_dict",
    "scalar_marginal",
    "split_argmin_scalar",
    "split_objective",
    "subset_min_singular_value",
    "write_problem_file",
]
