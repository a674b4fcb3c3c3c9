"""Scikit-learn estimator wrapping the continuation solver."""

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .problem import LeastSquares, ProblemInstance, l0_objective
from .solver import SolverConfig, continuation_solve
from ._validation import as_matrix
from .errors import InputError


class CompositeL0Regression(RegressorMixin, BaseEstimator):
    """Least squares penalized by the nonzero count of a transformed coefficient.

    Minimizes ``||X w - y||^2 + lam * nnz(B w)`` by block coordinate descent
    on a capped quadratic surrogate, sweeping the approximation scale upward
    and warm-starting each solve from the previous one.  With the default
    identity transform this is plain cardinality-penalized regression; a
    difference or wavelet-style ``B`` penalizes structured sparsity instead.

    Parameters
    ----------
    lam : float, default=1.0
        Weight of the count penalty.
    penalty_matrix : array of shape (m, n_features) or None, default=None
        Transform whose output is counted.  None means the identity.
    gamma0, gamma_factor, gamma_max : float
        Geometric schedule of the approximation scale.
    rel_tol : float
        Relative objective-stall tolerance of the inner solver.
    max_iters : int
        Inner iteration cap per scale.
    tol_zero : float
        Magnitude below which an entry counts as zero.

    Attributes
    ----------
    coef_ : ndarray of shape (n_features,)
        Fitted coefficients.
    aux_ : ndarray of shape (m,)
        Terminal auxiliary vector (thresholded transform of ``coef_``).
    objective_ : float
        Exact count-penalized objective at ``coef_``.
    reports_ : list of SolveReport
        One report per scale on the continuation path.
    n_iter_ : int
        Total inner iterations across the path.
    """

    def __init__(
        self,
        lam=1.0,
        penalty_matrix=None,
        gamma0=1e-2,
        gamma_factor=4.0,
        gamma_max=1e8,
        rel_tol=1e-10,
        max_iters=10000,
        tol_zero=1e-9,
    ):
        self.lam = lam
        self.penalty_matrix = penalty_matrix
        self.gamma0 = gamma0
        self.gamma_factor = gamma_factor
        self.gamma_max = gamma_max
        self.rel_tol = rel_tol
        self.max_iters = max_iters
        self.tol_zero = tol_zero

    def fit(self, X, y):
        X, y = check_X_y(X, y, y_numeric=True)
        n_features = X.shape[1]
        if self.penalty_matrix is None:
            B = np.eye(n_features)
        else:
            B = as_matrix(self.penalty_matrix, "penalty_matrix")
            if B.shape[1] != n_features:
                raise InputError(
                    f"penalty_matrix must have {n_features} columns, got {B.shape[1]}"
                )
        inst = ProblemInstance(LeastSquares(X, y), B, lam=self.lam, p=2.0)
        config = SolverConfig(
            max_iters=self.max_iters,
            rel_tol=self.rel_tol,
            gamma0=self.gamma0,
            gamma_factor=self.gamma_factor,
            gamma_max=self.gamma_max,
            tol_zero=self.tol_zero,
        )
        reports = continuation_solve(inst, config)
        final = reports[-1]
        self.coef_ = final.x
        self.aux_ = final.v
        self.reports_ = reports
        self.objective_ = l0_objective(inst, final.x, self.tol_zero)
        self.n_iter_ = int(sum(r.iterations for r in reports))
        self.n_features_in_ = n_features
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise InputError(
                f"X must have {self.n_features_in_} features, got {X.shape[1]}"
            )
        return X @ self.coef_
