"""Exact-approximation thresholds and the kernel compactness certificate.

Above a computable scale the capped surrogate stops approximating and becomes
exact: the surrogate problem and the count problem share optimal solutions.
This module computes those scales for point-list constraint sets and for
counting data fits, plus a certified radius bounding the kernel component of
smoothed minimizers for quadratic fits.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .linalg import null_space_basis, solve_with_equalities, subset_min_singular_value
from .problem import DEFAULT_TOL_ZERO, LeastSquares, count_nonzeros
from ._validation import as_matrix, as_vector, nonnegative_scalar, positive_scalar
from .errors import InputError, UnsupportedConfigError

# Entries of a kernel-restricted transform at or below this relative size mean
# the kernel never moves the penalty.
_ZERO_BLOCK_RTOL = 1e-12


@dataclass(frozen=True)
class FiniteSetThreshold:
    """Exactness threshold for minimizing the transform count over a point list.

    ``best_count`` is the optimal count; ``critical_magnitude`` is the
    smallest ``best_count``-th largest transform magnitude over the points;
    ``gamma_star`` is ``1 / critical_magnitude**p``.  Any scale above
    ``gamma_star`` makes the surrogate argmin coincide with the count argmin.
    When the optimal count is zero the threshold degenerates: every scale is
    exact, reported as ``gamma_star = 0`` with infinite magnitude.
    """

    best_count: int
    critical_magnitude: float
    gamma_star: float


@dataclass(frozen=True)
class L0L0Threshold:
    """Exactness threshold for a counting data fit with a counting penalty.

    ``best_value`` is the optimum of ``nnz(A x - b) + lam * nnz(B x)``;
    ``coupling_gap`` is the smallest ``||B x - v||_p^p`` over pattern pairs
    whose combined count beats the optimum; ``gamma_star = best_value /
    (lam * coupling_gap)``.  When no pattern pair can beat the optimum the
    threshold is zero and the gap infinite.
    """

    best_value: float
    coupling_gap: float
    gamma_star: float


@dataclass(frozen=True)
class BoundCertificate:
    """Certified radius for kernel components of smoothed minimizers.

    For a quadratic fit, some optimal point of the smoothed objective at any
    scale at least ``gamma0`` has a kernel component no longer than
    ``radius = sqrt(m) / sigma_kernel * (level_set_sup + gamma0**(-1/p))``.
    ``level_set_sup`` bounds ``||B u||_inf`` over row-space points with fit
    value at most ``alpha``; ``sigma_kernel`` is the subset-minimal singular
    value of ``B`` restricted to the kernel basis.  A kernel invisible to
    ``B`` gives radius zero.
    """

    level_set_sup: float
    sigma_kernel: float
    radius: float
    kernel_dim: int


def finite_set_threshold(points, B, p, tol_zero=DEFAULT_TOL_ZERO):
    """Exactness threshold for ``min nnz(B x)`` over an explicit point list."""
    pts = as_matrix(points, "points")
    if pts.shape[0] < 1:
        raise InputError("points must contain at least one point")
    B = as_matrix(B, "B")
    if not np.any(B):
        raise InputError("B must be nonzero")
    if B.shape[1] != pts.shape[1]:
        raise InputError(f"B must have {pts.shape[1]} columns, got {B.shape[1]}")
    p = positive_scalar(p, "p")
    transforms = pts @ B.T
    counts = [count_nonzeros(row, tol_zero) for row in transforms]
    best = min(counts)
    if best == 0:
        return FiniteSetThreshold(
            best_count=0, critical_magnitude=math.inf, gamma_star=0.0
        )
    kth = []
    for row in transforms:
        mags = np.sort(np.abs(row))[::-1]
        kth.append(float(mags[best - 1]))
    tau = min(kth)
    return FiniteSetThreshold(
        best_count=best, critical_magnitude=tau, gamma_star=1.0 / tau**p
    )


def l0_l0_threshold(A, b, B, lam, p=2.0, tol_zero=DEFAULT_TOL_ZERO):
    """Exactness threshold for ``nnz(A x - b) + lam * nnz(B x)``.

    Enumerates pattern pairs whose combined count is strictly better than the
    optimum and measures how far each keeps ``B x`` from its matching ``v``;
    the worst-case ratio gives the threshold.  The quadratic coupling
    (``p == 2``) admits an exact inner solve; other exponents are not
    supported.
    """
    if p != 2.0:
        raise UnsupportedConfigError("threshold computation requires p == 2")
    A = as_matrix(A, "A")
    b = as_vector(b, "b", size=A.shape[0])
    B = as_matrix(B, "B")
    lam = positive_scalar(lam, "lam")
    base = oracle.min_l0_l0(A, b, B, lam, tol_zero)
    s = base.value
    t, m = A.shape[0], B.shape[0]
    bound = s - min(1.0, lam) + 1e-12 * (1.0 + abs(s))
    gap = math.inf
    for rows_a in oracle._subsets(t):
        nominal_fit = t - len(rows_a)
        if nominal_fit > bound:
            continue
        A_sub = A[list(rows_a)]
        b_sub = b[list(rows_a)]
        for supp_v in oracle._subsets(m):
            if nominal_fit + lam * len(supp_v) > bound:
                continue
            comp = [i for i in range(m) if i not in supp_v]
            x = solve_with_equalities(B[comp], np.zeros(len(comp)), A_sub, b_sub)
            if x is None:
                continue
            resid = B[comp] @ x
            gap = min(gap, float(resid @ resid))
    if not math.isfinite(gap):
        return L0L0Threshold(best_value=s, coupling_gap=math.inf, gamma_star=0.0)
    return L0L0Threshold(best_value=s, coupling_gap=gap, gamma_star=s / (lam * gap))


def kernel_bound_certificate(inst, gamma0, alpha):
    """Certified kernel-component radius for smoothed minimizers.

    ``alpha`` must dominate the optimal penalized value (for instance the
    exact optimum from the oracle module); the certificate then covers every
    scale at least ``gamma0``.  Quadratic data fits only.
    """
    if not isinstance(inst.datafit, LeastSquares):
        raise UnsupportedConfigError("the bound certificate requires a least_squares fit")
    gamma0 = positive_scalar(gamma0, "gamma0")
    alpha = nonnegative_scalar(alpha, "alpha")
    A, b, B = inst.datafit.A, inst.datafit.b, inst.B
    m = inst.m

    _, svals, Vt = np.linalg.svd(A, full_matrices=True)
    cutoff = 1e-10 * (svals[0] if svals.size else 0.0)
    rank = int(np.count_nonzero(svals > cutoff))
    kernel = Vt[rank:].T
    kernel_dim = inst.n - rank

    level_sup = _level_set_sup(A, b, B, alpha, rank)

    if kernel_dim == 0:
        return BoundCertificate(
            level_set_sup=level_sup, sigma_kernel=math.inf, radius=0.0,
            kernel_dim=0,
        )
    BK = B @ kernel
    if np.max(np.abs(BK), initial=0.0) <= _ZERO_BLOCK_RTOL * (
        1.0 + float(np.max(np.abs(B), initial=0.0))
    ):
        return BoundCertificate(
            level_set_sup=level_sup, sigma_kernel=math.inf, radius=0.0,
            kernel_dim=kernel_dim,
        )
    sigma = subset_min_singular_value(BK)
    radius = math.sqrt(m) / sigma * (level_sup + gamma0 ** (-1.0 / inst.p))
    return BoundCertificate(
        level_set_sup=level_sup, sigma_kernel=sigma, radius=radius,
        kernel_dim=kernel_dim,
    )


def _level_set_sup(A, b, B, alpha, rank):
    """Exact ``sup ||B u||_inf`` over row-space ``u`` with ``||A u - b||^2 <= alpha``.

    In the coordinates of the rank-revealing decomposition the slice is an
    ellipsoid, so each coordinate maximum of a linear functional is the center
    value plus the scaled gradient norm; no sampling is involved.
    """
    if rank == 0:
        return 0.0
    U, svals, Vt = np.linalg.svd(A, full_matrices=False)
    sr = svals[:rank]
    Ur = U[:, :rank]
    W = Vt[:rank].T
    c = Ur.T @ b
    resid0 = float(b @ b - c @ c)
    beta = alpha - max(resid0, 0.0)
    if beta < -1e-9 * (1.0 + alpha):
        raise InputError("alpha lies below the minimum fit value; the level slice is empty")
    beta = max(beta, 0.0)
    center = c / sr
    G = B @ W
    sup = 0.0
    for g in G:
        sup = max(sup, abs(float(g @ center)) + math.sqrt(beta) * float(np.linalg.norm(g / sr)))
    return sup
