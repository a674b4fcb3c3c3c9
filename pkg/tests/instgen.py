"""Seeded instance generators shared by the unit and acceptance suites."""

import numpy as np

from cappedlp import LeastSquares, ProblemInstance


def random_instance(rng, n_max=5, m_max=5, lam=1.0):
    """Generic least-squares instance with iid uniform entries."""
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    r = int(rng.integers(2, n_max + 2))
    A = rng.uniform(-1.0, 1.0, (r, n))
    b = rng.uniform(-1.0, 1.0, r)
    B = rng.uniform(-1.0, 1.0, (m, n))
    return ProblemInstance(LeastSquares(A, b), B, lam=lam, p=2.0)


def wide_transform_instance(rng, n_max=5, lam=1.0):
    """Least-squares instance whose transform is strictly wider than tall.

    Square transform subblocks of iid matrices are near-singular a few
    percent of the time, which inflates the duals controlling how fast the
    smoothed optimum approaches the exact one; strictly rectangular blocks
    (the difference-operator shape) keep them bounded.
    """
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, n))
    r = int(rng.integers(2, n_max + 2))
    A = rng.uniform(-1.0, 1.0, (r, n))
    b = rng.uniform(-1.0, 1.0, r)
    B = rng.uniform(-1.0, 1.0, (m, n))
    return ProblemInstance(LeastSquares(A, b), B, lam=lam, p=2.0)


def planted_instance(rng, n_max=4):
    """Well-separated benchmark instance: the target is exactly consistent.

    Draws a coefficient vector whose transform has a planted support with
    magnitudes well above the cap thresholds swept by the default schedule,
    sets the right-hand side to the exact image, and keeps the penalty weight
    small enough that the planted pattern is the exact optimum; the pattern
    is then recoverable with zero residual.
    """
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, n + 1))
    r = n + int(rng.integers(1, 3))
    A = rng.uniform(-1.0, 1.0, (r, n))
    B = rng.uniform(-1.0, 1.0, (m, n))
    k = int(rng.integers(0, m + 1))
    y = np.zeros(m)
    if k:
        support = rng.choice(m, size=k, replace=False)
        y[support] = rng.uniform(1.0, 2.0, k) * rng.choice([-1.0, 1.0], k)
    x_true = np.linalg.lstsq(B, y, rcond=None)[0]
    b = A @ x_true
    lam = float(rng.uniform(0.05, 0.3))
    return ProblemInstance(LeastSquares(A, b), B, lam=lam, p=2.0)


def rank_deficient_instance(rng):
    """Least-squares instance whose design matrix has a nontrivial kernel."""
    n = int(rng.integers(3, 6))
    r = max(n - int(rng.integers(1, 3)), 1)
    m = int(rng.integers(2, 5))
    A = rng.uniform(-1.0, 1.0, (r, n))
    b = rng.uniform(-1.0, 1.0, r)
    B = rng.uniform(-1.0, 1.0, (m, n))
    lam = float(rng.uniform(0.5, 2.0))
    return ProblemInstance(LeastSquares(A, b), B, lam=lam, p=2.0)


def random_point_set(rng, n_max=5, size_max=20):
    """Point list with varied transform sparsity, plus the transform matrix.

    Each point is chosen so its transform matches a sparse target exactly,
    with nonzero magnitudes bounded away from zero, so the nonzero counts
    differ across points.
    """
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, n + 1))
    size = int(rng.integers(2, size_max + 1))
    B = rng.uniform(-1.0, 1.0, (m, n))
    points = []
    for _ in range(size):
        k = int(rng.integers(1, m + 1))
        y = np.zeros(m)
        support = rng.choice(m, size=k, replace=False)
        y[support] = rng.uniform(0.2, 1.0, k) * rng.choice([-1.0, 1.0], k)
        points.append(np.linalg.lstsq(B, y, rcond=None)[0])
    return np.array(points), B


def random_l0_l0_data(rng, rows_max=3):
    """Data for a counting fit with a counting penalty, desk scale."""
    n = int(rng.integers(1, 4))
    t = int(rng.integers(1, rows_max + 1))
    m = int(rng.integers(1, rows_max + 1))
    A = rng.uniform(-1.0, 1.0, (t, n))
    b = rng.uniform(-1.0, 1.0, t)
    B = rng.uniform(-1.0, 1.0, (m, n))
    lam = float(rng.choice([0.5, 1.0, 2.0]))
    return A, b, B, lam
