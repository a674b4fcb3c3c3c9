"""Block coordinate descent on the split objective, with scale continuation.

Each sweep alternates two exact block minimizations: the auxiliary vector is
hard-thresholded coordinatewise, then the variable solves a regularized
least-squares system.  Both steps decrease the split objective, so the trace
is nonincreasing.  Running the solver over a geometrically increasing scale
schedule, warm-starting each solve from the last, drives the smoothed problem
toward the exact count-penalized one.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import least_squares, min_norm_lstsq
from .problem import (
    DEFAULT_TOL_ZERO,
    LeastSquares,
    capped_objective,
    split_objective,
)
from ._validation import as_vector, positive_scalar
from .errors import InputError, UnsupportedConfigError


@dataclass(frozen=True)
class SolverConfig:
    """Iteration limits, stopping rule and the scale schedule."""

    max_iters: int = 10000
    rel_tol: float = 1e-10
    gamma0: float = 1e-2
    gamma_factor: float = 4.0
    gamma_max: float = 1e8
    tol_zero: float = DEFAULT_TOL_ZERO

    def __post_init__(self):
        if int(self.max_iters) < 1:
            raise InputError("max_iters must be at least 1")
        object.__setattr__(self, "max_iters", int(self.max_iters))
        object.__setattr__(self, "rel_tol", positive_scalar(self.rel_tol, "rel_tol"))
        object.__setattr__(self, "gamma0", positive_scalar(self.gamma0, "gamma0"))
        object.__setattr__(self, "gamma_max", positive_scalar(self.gamma_max, "gamma_max"))
        object.__setattr__(
            self, "gamma_factor", positive_scalar(self.gamma_factor, "gamma_factor")
        )
        if self.gamma_factor <= 1.0:
            raise InputError("gamma_factor must exceed 1")
        if self.gamma0 > self.gamma_max:
            raise InputError("gamma0 must not exceed gamma_max")
        if self.tol_zero < 0:
            raise InputError("tol_zero must be nonnegative")


@dataclass(frozen=True, eq=False)
class SolveReport:
    """Terminal iterate pair and the per-step objective trace.

    At termination ``v`` is the coordinatewise split argmin of ``B x``, so
    ``split_value`` matches ``psi_value`` up to roundoff; ``trace`` holds the
    split objective after every block update and never increases.
    """

    x: np.ndarray
    v: np.ndarray
    split_value: float
    psi_value: float
    gamma: float
    iterations: int
    converged: bool
    trace: tuple


def _threshold(bx, gamma):
    # Ties (gamma * t**2 == 1) go to zero, matching the scalar argmin.
    return np.where(gamma * bx**2 > 1.0, bx, 0.0)


def bcd_solve(inst, gamma, config=None, x0=None):
    """Alternate exact block minimizations of the split objective at fixed scale.

    Supports quadratic data fits with ``p == 2``; the variable update solves
    the stacked least-squares system, falling back to the minimum-norm
    solution when it is singular.  Defaults the start to the minimum-norm
    least-squares solution; starting elsewhere (for example at zero) can stall
    on a spurious fixed point.
    """
    config = config or SolverConfig()
    gamma = positive_scalar(gamma, "gamma")
    if not isinstance(inst.datafit, LeastSquares) or inst.p != 2.0:
        raise UnsupportedConfigError(
            "the block solver requires p == 2 and a least_squares fit"
        )
    A, b, B = inst.datafit.A, inst.datafit.b, inst.B
    if x0 is None:
        x, _ = least_squares(A, b)
    else:
        x = np.array(as_vector(x0, "x0", size=inst.n))

    root = math.sqrt(inst.lam * gamma)
    stacked = np.vstack([A, root * B])
    rhs = np.concatenate([b, np.zeros(inst.m)])

    trace = []
    bx = B @ x
    prev = math.inf
    converged = False
    iterations = 0
    for it in range(1, config.max_iters + 1):
        v = _threshold(bx, gamma)
        trace.append(split_objective(inst, x, v, gamma, config.tol_zero))
        rhs[A.shape[0]:] = root * v
        x = min_norm_lstsq(stacked, rhs)
        bx = B @ x
        current = split_objective(inst, x, v, gamma, config.tol_zero)
        trace.append(current)
        iterations = it
        if abs(prev - current) <= config.rel_tol * (1.0 + abs(current)):
            converged = True
            break
        prev = current

    v = _threshold(bx, gamma)
    trace.append(split_objective(inst, x, v, gamma, config.tol_zero))
    return SolveReport(
        x=x,
        v=v,
        split_value=trace[-1],
        psi_value=capped_objective(inst, x, gamma),
        gamma=gamma,
        iterations=iterations,
        converged=converged,
        trace=tuple(trace),
    )


def continuation_schedule(config):
    """Geometric scale schedule from ``gamma0`` up to exactly ``gamma_max``."""
    gammas = [config.gamma0]
    g = config.gamma0
    while g < config.gamma_max * (1.0 - 1e-12):
        g = min(g * config.gamma_factor, config.gamma_max)
        gammas.append(g)
    return gammas


def continuation_solve(inst, config=None):
    """Run the block solver over the scale schedule with warm starts.

    Returns one report per scale; the final report's ``x`` is the candidate
    minimizer of the exact count-penalized objective.
    """
    config = config or SolverConfig()
    reports = []
    x = None
    for gamma in continuation_schedule(config):
        report = bcd_solve(inst, gamma, config, x0=x)
        reports.append(report)
        x = report.x
    return reports
