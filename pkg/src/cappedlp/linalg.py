"""Small dense linear algebra: minimum-norm least squares, null spaces,
homogeneous equality constraints and the subset-minimal singular value.

Everything here targets desk-scale problems solved by direct factorizations;
there are no iterative or sparse paths.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import as_matrix, as_vector, frozen, positive_scalar
from .errors import CapacityError, InputError

DEFAULT_RANK_TOL = 1e-10

# Subset enumeration is exponential in the row count.
MAX_SUBSET_ROWS = 16


def min_norm_lstsq(M, rhs):
    """Minimum-norm least-squares solution of ``M x ~ rhs``.

    An empty system (zero rows) yields the zero vector.
    """
    if M.shape[0] == 0:
        return np.zeros(M.shape[1])
    return np.linalg.lstsq(M, rhs, rcond=None)[0]


def least_squares(A, b):
    """Minimum-norm minimizer of ``||A x - b||_2`` and the attained squared value."""
    A = as_matrix(A, "A")
    b = as_vector(b, "b", size=A.shape[0])
    x = min_norm_lstsq(A, b)
    r = A @ x - b
    return x, float(r @ r)


@dataclass(frozen=True, eq=False)
class NullBasis:
    """Orthonormal basis of a kernel: ``basis`` is n-by-dim with ``A @ basis = 0``."""

    basis: np.ndarray
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "basis", frozen(self.basis))


def null_space_basis(A, rank_tol=DEFAULT_RANK_TOL):
    """Orthonormal basis of ``{x : A x = 0}``.

    Singular values at or below ``rank_tol`` times the largest one are treated
    as zero.
    """
    A = as_matrix(A, "A")
    rank_tol = positive_scalar(rank_tol, "rank_tol")
    n = A.shape[1]
    if A.shape[0] == 0:
        return NullBasis(basis=np.eye(n), dim=n)
    _, s, Vt = np.linalg.svd(A, full_matrices=True)
    cutoff = rank_tol * (s[0] if s.size else 0.0)
    rank = int(np.count_nonzero(s > cutoff))
    basis = Vt[rank:].T
    return NullBasis(basis=basis, dim=n - rank)


def constrained_least_squares(A, b, Ceq):
    """Minimize ``||A x - b||_2**2`` subject to ``Ceq x = 0``.

    Solves on the null space of ``Ceq``; the homogeneous constraint is always
    feasible.  Returns the minimum-norm minimizer and the attained value.
    """
    A = as_matrix(A, "A")
    b = as_vector(b, "b", size=A.shape[0])
    Ceq = as_matrix(Ceq, "Ceq")
    if Ceq.shape[0] == 0:
        return least_squares(A, b)
    if Ceq.shape[1] != A.shape[1]:
        raise InputError(
            f"Ceq must have {A.shape[1]} columns, got {Ceq.shape[1]}"
        )
    Z = null_space_basis(Ceq).basis
    if Z.shape[1] == 0:
        x = np.zeros(A.shape[1])
        return x, float(b @ b)
    y = min_norm_lstsq(A @ Z, b)
    x = Z @ y
    r = A @ x - b
    return x, float(r @ r)


def solve_with_equalities(A, b, C, d, feas_tol=1e-8):
    """Minimize ``||A x - b||_2**2`` subject to ``C x = d``.

    Returns the minimum-norm minimizer, or ``None`` when the equalities are
    inconsistent (residual above ``feas_tol * (1 + ||d||)``).  ``A`` may have
    zero rows, in which case the minimum-norm feasible point is returned.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    C = np.asarray(C, dtype=float)
    d = np.asarray(d, dtype=float)
    if C.shape[0] == 0:
        x = min_norm_lstsq(A, b)
        return x
    x0 = min_norm_lstsq(C, d)
    if np.linalg.norm(C @ x0 - d) > feas_tol * (1.0 + np.linalg.norm(d)):
        return None
    Z = null_space_basis(C).basis
    if Z.shape[1] == 0 or A.shape[0] == 0:
        return x0
    y = min_norm_lstsq(A @ Z, b - A @ x0)
    return x0 + Z @ y


def subset_min_singular_value(M, rank_tol=DEFAULT_RANK_TOL):
    """Minimum over nonzero row subsets of the smallest nonzero singular value.

    Enumerates all ``2**rows - 1`` nonempty row subsets of ``M``, skipping
    all-zero submatrices, and takes the least nonzero singular value seen.
    The result is strictly positive.  ``M`` must be nonzero and have at most
    ``MAX_SUBSET_ROWS`` rows.
    """
    M = as_matrix(M, "M")
    rank_tol = positive_scalar(rank_tol, "rank_tol")
    rows = M.shape[0]
    if rows == 0 or not np.any(M):
        raise InputError("M must have at least one nonzero entry")
    if rows > MAX_SUBSET_ROWS:
        raise CapacityError(
            f"subset enumeration supports at most {MAX_SUBSET_ROWS} rows, got {rows}"
        )
    best = np.inf
    for mask in range(1, 1 << rows):
        sub = M[[i for i in range(rows) if mask >> i & 1]]
        if not np.any(sub):
            continue
        s = np.linalg.svd(sub, compute_uv=False)
        nonzero = s[s > rank_tol * s[0]]
        if nonzero.size:
            best = min(best, float(nonzero[-1]))
    return best
