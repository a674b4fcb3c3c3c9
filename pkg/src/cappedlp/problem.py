"""Problem data and the objective functions evaluated throughout the package.

A problem couples a data-fit term with a weighted count of nonzero entries of
a linear transform of the variable:

    fit(x) + lam * nnz(B @ x)

Replacing the exact count with the capped penalty gives the smoothed
objective ``fit(x) + lam * capped_sum(B @ x)``, and introducing an auxiliary
vector ``v`` splits the penalty into a power distance plus an exact count:

    fit(x) + lam * gamma * ||B @ x - v||_p^p + lam * nnz(v)

All exact counts use a zero tolerance; floating-point solves never produce
exact zeros, so every count in the package flows through
:func:`count_nonzeros`.
"""

import math
from dataclasses import dataclass

import numpy as np

from .capped import CappedParams, capped_sum
from ._validation import as_matrix, as_vector, frozen, positive_scalar
from .errors import InputError

DEFAULT_TOL_ZERO = 1e-9

# Relative slack for membership tests against an explicit point list.
_MEMBERSHIP_RTOL = 1e-12


def count_nonzeros(y, tol_zero=DEFAULT_TOL_ZERO):
    """Number of entries of ``y`` with magnitude above ``tol_zero``."""
    if tol_zero < 0:
        raise InputError("tol_zero must be nonnegative")
    return int(np.count_nonzero(np.abs(np.asarray(y, dtype=float)) > tol_zero))


@dataclass(frozen=True, eq=False)
class LeastSquares:
    """Quadratic data fit ``||A x - b||_2**2``."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        b = as_vector(self.b, "b", size=A.shape[0])
        object.__setattr__(self, "A", frozen(A))
        object.__setattr__(self, "b", frozen(b))

    @property
    def dim(self):
        return self.A.shape[1]

    def value(self, x, tol_zero=DEFAULT_TOL_ZERO):
        r = self.A @ x - self.b
        return float(r @ r)


@dataclass(frozen=True, eq=False)
class L0Affine:
    """Counting data fit ``nnz(A x - b)``."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        b = as_vector(self.b, "b", size=A.shape[0])
        object.__setattr__(self, "A", frozen(A))
        object.__setattr__(self, "b", frozen(b))

    @property
    def dim(self):
        return self.A.shape[1]

    def value(self, x, tol_zero=DEFAULT_TOL_ZERO):
        return float(count_nonzeros(self.A @ x - self.b, tol_zero))


@dataclass(frozen=True, eq=False)
class FiniteSet:
    """Indicator data fit: zero on an explicit point list, infinite elsewhere.

    Infeasibility is reported through the objective value (``math.inf``)
    rather than an error, so minimization code treats all points uniformly.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = as_matrix(self.points, "points")
        if pts.shape[0] < 1:
            raise InputError("points must contain at least one point")
        object.__setattr__(self, "points", frozen(pts))

    @property
    def dim(self):
        return self.points.shape[1]

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        for c in self.points:
            tol = _MEMBERSHIP_RTOL * (1.0 + float(np.max(np.abs(c), initial=0.0)))
            if np.max(np.abs(x - c), initial=0.0) <= tol:
                return True
        return False

    def value(self, x, tol_zero=DEFAULT_TOL_ZERO):
        return 0.0 if self.contains(x) else math.inf


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """A data fit, transform ``B``, weight ``lam > 0`` and exponent ``p > 0``."""

    datafit: object
    B: np.ndarray
    lam: float
    p: float = 2.0

    def __post_init__(self):
        B = as_matrix(self.B, "B")
        object.__setattr__(self, "B", frozen(B))
        object.__setattr__(self, "lam", positive_scalar(self.lam, "lam"))
        object.__setattr__(self, "p", positive_scalar(self.p, "p"))
        if not hasattr(self.datafit, "dim") or not hasattr(self.datafit, "value"):
            raise InputError("datafit must provide dim and value()")
        if B.shape[1] != self.datafit.dim:
            raise InputError(
                f"B must have {self.datafit.dim} columns to match the data fit, "
                f"got {B.shape[1]}"
            )

    @property
    def n(self):
        return self.B.shape[1]

    @property
    def m(self):
        return self.B.shape[0]

    def fit_value(self, x, tol_zero=DEFAULT_TOL_ZERO):
        return self.datafit.value(x, tol_zero)


def _check_x(inst, x):
    return as_vector(x, "x", size=inst.n)


def l0_objective(inst, x, tol_zero=DEFAULT_TOL_ZERO):
    """Exact objective ``fit(x) + lam * nnz(B x)``.

    Returns ``math.inf`` when ``x`` lies outside the data-fit domain.
    """
    x = _check_x(inst, x)
    return inst.fit_value(x, tol_zero) + inst.lam * count_nonzeros(inst.B @ x, tol_zero)


def capped_objective(inst, x, gamma):
    """Smoothed objective ``fit(x) + lam * capped_sum(B x)``.

    Never exceeds :func:`l0_objective` at the same point and is nondecreasing
    in ``gamma``.
    """
    x = _check_x(inst, x)
    params = CappedParams(p=inst.p, gamma=gamma)
    return inst.fit_value(x) + inst.lam * capped_sum(inst.B @ x, params)


def split_objective(inst, x, v, gamma, tol_zero=DEFAULT_TOL_ZERO):
    """Two-block objective ``fit(x) + lam*gamma*||B x - v||_p^p + lam*nnz(v)``.

    Minimizing over ``v`` at fixed ``x`` recovers :func:`capped_objective`;
    with ``v = B x`` it reduces to :func:`l0_objective`.
    """
    x = _check_x(inst, x)
    v = as_vector(v, "v", size=inst.m)
    gamma = positive_scalar(gamma, "gamma")
    gap = np.abs(inst.B @ x - v) ** inst.p
    return (
        inst.fit_value(x, tol_zero)
        + inst.lam * gamma * float(np.sum(gap))
        + inst.lam * count_nonzeros(v, tol_zero)
    )
