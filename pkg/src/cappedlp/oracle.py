"""Exact global minimization by exhaustive support-pattern enumeration.

Every routine enumerates candidate zero patterns, solves the continuous
subproblem of each pattern exactly, scores it with the counts realized by the
solution, and keeps one minimum-norm representative per optimal pattern.
Problem sizes are capped: these are correctness anchors for the rest of the
package, not production solvers.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, InputError, UnsupportedConfigError
from .linalg import constrained_least_squares, min_norm_lstsq, solve_with_equalities
from .problem import (
    DEFAULT_TOL_ZERO,
    FiniteSet,
    L0Affine,
    LeastSquares,
    count_nonzeros,
)
from ._validation import as_matrix, as_vector, positive_scalar

# 2**m single-transform enumerations.
MAX_ENUM_ROWS = 14
# 2**(t+m) pattern-pair enumerations.
MAX_ENUM_PAIR_ROWS = 18

VALUE_TIE_RTOL = 1e-9
FEAS_RTOL = 1e-8


class Minimizer(NamedTuple):
    """One minimum-norm representative of an optimal support pattern."""

    x: np.ndarray
    support: tuple


@dataclass(frozen=True, eq=False)
class OracleResult:
    """Global minimum plus one representative per optimal pattern.

    ``feasible`` is False (with ``value = inf`` and no minimizers) only for
    constrained problems whose feasible set misses the data-fit domain.
    """

    value: float
    minimizers: tuple
    feasible: bool = True


def _subsets(n, min_size=0):
    for mask in range(1 << n):
        rows = tuple(i for i in range(n) if mask >> i & 1)
        if len(rows) >= min_size:
            yield rows


def _support(y, tol_zero):
    return tuple(int(i) for i in np.flatnonzero(np.abs(y) > tol_zero))


def _collect(candidates):
    """Reduce (value, support, x) candidates to an OracleResult.

    Keeps every candidate tying the best value within VALUE_TIE_RTOL, one
    minimum-norm representative per distinct support, sorted by support.
    """
    if not candidates:
        return OracleResult(value=math.inf, minimizers=(), feasible=False)
    best = min(val for val, _, _ in candidates)
    tol = VALUE_TIE_RTOL * (1.0 + abs(best))
    reps = {}
    for val, support, x in candidates:
        if val > best + tol:
            continue
        norm = float(np.linalg.norm(x))
        kept = reps.get(support)
        if kept is None or norm < kept[0]:
            reps[support] = (norm, x)
    minimizers = tuple(
        Minimizer(x=reps[s][1], support=s) for s in sorted(reps.keys())
    )
    return OracleResult(value=float(best), minimizers=minimizers)


def _check_rows_cap(rows):
    if rows > MAX_ENUM_ROWS:
        raise CapacityError(
            f"pattern enumeration supports at most {MAX_ENUM_ROWS} transform rows, "
            f"got {rows}"
        )


def _check_pair_cap(total):
    if total > MAX_ENUM_PAIR_ROWS:
        raise CapacityError(
            f"pattern-pair enumeration supports at most {MAX_ENUM_PAIR_ROWS} total "
            f"rows, got {total}"
        )


def min_l0(inst, tol_zero=DEFAULT_TOL_ZERO):
    """Exact global minimum of ``fit(x) + lam * nnz(B x)``.

    Least-squares fits enumerate all zero patterns of ``B x`` and solve a
    constrained least-squares problem per pattern; finite-set fits scan the
    points; counting fits enumerate pattern pairs.
    """
    fit = inst.datafit
    if isinstance(fit, FiniteSet):
        candidates = []
        for c in fit.points:
            bx = inst.B @ c
            val = inst.lam * count_nonzeros(bx, tol_zero)
            candidates.append((val, (_support(bx, tol_zero), _point_key(c)), c))
        result = _collect(candidates)
        return _strip_point_keys(result)
    if isinstance(fit, L0Affine):
        pair = min_l0_l0(fit.A, fit.b, inst.B, inst.lam, tol_zero)
        return _collect(
            [(pair.value, mz.support[1], mz.x) for mz in pair.minimizers]
        )
    if isinstance(fit, LeastSquares):
        _check_rows_cap(inst.m)
        candidates = []
        for rows in _subsets(inst.m):
            x, fitval = constrained_least_squares(fit.A, fit.b, inst.B[list(rows)])
            bx = inst.B @ x
            val = fitval + inst.lam * count_nonzeros(bx, tol_zero)
            candidates.append((val, _support(bx, tol_zero), x))
        return _collect(candidates)
    raise UnsupportedConfigError(f"unsupported data fit {type(fit).__name__}")


def min_capped(inst, gamma, tol_zero=DEFAULT_TOL_ZERO):
    """Exact global minimum of the smoothed objective, quadratic case only.

    For every support ``S`` of the auxiliary vector, the inner problem
    ``min_x ||A x - b||^2 + lam*gamma*||(B x) off S||^2 + lam*|S|`` has a
    closed-form least-squares solution; the best support wins.  Requires
    ``p == 2`` and a least-squares data fit.
    """
    gamma = positive_scalar(gamma, "gamma")
    if not isinstance(inst.datafit, LeastSquares) or inst.p != 2.0:
        raise UnsupportedConfigError(
            "exact smoothed minimization requires p == 2 and a least_squares fit"
        )
    _check_rows_cap(inst.m)
    A, b, B = inst.datafit.A, inst.datafit.b, inst.B
    scale = math.sqrt(inst.lam * gamma)
    candidates = []
    for rows in _subsets(inst.m):
        comp = [i for i in range(inst.m) if i not in rows]
        M = np.vstack([A, scale * B[comp]])
        rhs = np.concatenate([b, np.zeros(len(comp))])
        x = min_norm_lstsq(M, rhs)
        r = A @ x - b
        pen = B[comp] @ x
        val = float(r @ r) + inst.lam * gamma * float(pen @ pen) + inst.lam * len(rows)
        bx = B @ x
        realized = tuple(
            int(i) for i in np.flatnonzero(gamma * bx**2 > 1.0)
        )
        candidates.append((val, realized, x))
    return _collect(candidates)


def min_constrained(inst, k, tol_zero=DEFAULT_TOL_ZERO):
    """Exact minimum of the data fit subject to ``nnz(B x) <= k``.

    Finite-set fits may be infeasible; the result then carries
    ``feasible=False`` instead of raising.
    """
    if not 0 <= k <= inst.m:
        raise InputError(f"k must lie in [0, {inst.m}], got {k}")
    fit = inst.datafit
    if isinstance(fit, FiniteSet):
        candidates = []
        for c in fit.points:
            bx = inst.B @ c
            if count_nonzeros(bx, tol_zero) <= k:
                candidates.append((0.0, (_support(bx, tol_zero), _point_key(c)), c))
        return _strip_point_keys(_collect(candidates))
    if isinstance(fit, LeastSquares):
        _check_rows_cap(inst.m)
        candidates = []
        for rows in _subsets(inst.m, min_size=inst.m - k):
            x, fitval = constrained_least_squares(fit.A, fit.b, inst.B[list(rows)])
            bx = inst.B @ x
            candidates.append((fitval, _support(bx, tol_zero), x))
        return _collect(candidates)
    if isinstance(fit, L0Affine):
        t = fit.A.shape[0]
        _check_pair_cap(t + inst.m)
        rhs_scale = 1.0 + float(np.linalg.norm(fit.b))
        candidates = []
        for rows_b in _subsets(inst.m, min_size=inst.m - k):
            Ceq = inst.B[list(rows_b)]
            for rows_a in _subsets(t):
                M = np.vstack([fit.A[list(rows_a)], Ceq])
                rhs = np.concatenate([fit.b[list(rows_a)], np.zeros(len(rows_b))])
                x = min_norm_lstsq(M, rhs)
                if np.linalg.norm(M @ x - rhs) > FEAS_RTOL * rhs_scale:
                    continue
                resid = fit.A @ x - fit.b
                val = float(count_nonzeros(resid, tol_zero))
                support = (_support(resid, tol_zero), _support(inst.B @ x, tol_zero))
                candidates.append((val, support, x))
        return _collect(candidates)
    raise UnsupportedConfigError(f"unsupported data fit {type(fit).__name__}")


def min_l0_l0(A, b, B, lam, tol_zero=DEFAULT_TOL_ZERO):
    """Exact global minimum of ``nnz(A x - b) + lam * nnz(B x)``.

    Enumerates pairs (rows of ``A`` satisfied exactly, rows of ``B`` zeroed),
    checks linear feasibility of each pair, and scores the minimum-norm
    solution with its realized counts.  Supports are reported as
    ``(residual support, transform support)`` pairs.
    """
    A = as_matrix(A, "A")
    b = as_vector(b, "b", size=A.shape[0])
    B = as_matrix(B, "B")
    lam = positive_scalar(lam, "lam")
    if B.shape[1] != A.shape[1]:
        raise InputError(f"B must have {A.shape[1]} columns, got {B.shape[1]}")
    t, m = A.shape[0], B.shape[0]
    _check_pair_cap(t + m)
    rhs_scale = 1.0 + float(np.linalg.norm(b))
    candidates = []
    for rows_a in _subsets(t):
        for rows_b in _subsets(m):
            M = np.vstack([A[list(rows_a)], B[list(rows_b)]])
            rhs = np.concatenate([b[list(rows_a)], np.zeros(len(rows_b))])
            x = min_norm_lstsq(M, rhs)
            if np.linalg.norm(M @ x - rhs) > FEAS_RTOL * rhs_scale:
                continue
            resid = A @ x - b
            bx = B @ x
            val = count_nonzeros(resid, tol_zero) + lam * count_nonzeros(bx, tol_zero)
            support = (_support(resid, tol_zero), _support(bx, tol_zero))
            candidates.append((val, support, x))
    return _collect(candidates)


def min_l0_l0_penalized(A, b, B, lam, gamma, p=2.0, tol_zero=DEFAULT_TOL_ZERO):
    """Exact minimum of ``nnz(A x - b) + lam*nnz(v) + lam*gamma*||B x - v||^2``.

    Enumerates (rows of ``A`` satisfied exactly, support of ``v``); the inner
    problem minimizes the coupling term over the affine set, with ``v``
    matching ``B x`` on its support.  Quadratic coupling only (``p == 2``).
    Supports are ``(residual support, v support)`` pairs.
    """
    if p != 2.0:
        raise UnsupportedConfigError("penalized pair enumeration requires p == 2")
    A = as_matrix(A, "A")
    b = as_vector(b, "b", size=A.shape[0])
    B = as_matrix(B, "B")
    lam = positive_scalar(lam, "lam")
    gamma = positive_scalar(gamma, "gamma")
    t, m = A.shape[0], B.shape[0]
    _check_pair_cap(t + m)
    candidates = []
    for rows_a in _subsets(t):
        A_sub = A[list(rows_a)]
        b_sub = b[list(rows_a)]
        for supp_v in _subsets(m):
            comp = [i for i in range(m) if i not in supp_v]
            x = solve_with_equalities(B[comp], np.zeros(len(comp)), A_sub, b_sub)
            if x is None:
                continue
            bx = B @ x
            v = np.zeros(m)
            v[list(supp_v)] = bx[list(supp_v)]
            gap = bx - v
            resid = A @ x - b
            val = (
                count_nonzeros(resid, tol_zero)
                + lam * count_nonzeros(v, tol_zero)
                + lam * gamma * float(gap @ gap)
            )
            support = (_support(resid, tol_zero), _support(v, tol_zero))
            candidates.append((val, support, x))
    return _collect(candidates)


def _point_key(c):
    # Distinct listed points must stay distinct even when their transform
    # supports coincide: the solution set of a point-list fit is the points
    # themselves.
    return tuple(float(t) for t in c)


def _strip_point_keys(result):
    if not result.feasible:
        return result
    minimizers = tuple(
        Minimizer(x=mz.x, support=mz.support[0]) for mz in result.minimizers
    )
    return OracleResult(value=result.value, minimizers=minimizers)
