import math

import numpy as np
import pytest

from cappedlp import (
    CappedParams,
    FiniteSet,
    InputError,
    L0Affine,
    LeastSquares,
    ProblemInstance,
    capped_objective,
    count_nonzeros,
    l0_objective,
    split_argmin_scalar,
    split_objective,
)

from instgen import random_instance


@pytest.fixture
def worked():
    return ProblemInstance(LeastSquares(np.eye(2), [1.0, 0.0]), np.eye(2), lam=0.5, p=2.0)


def test_count_nonzeros():
    assert count_nonzeros([0.0, 0.0, 0.0], 1e-9) == 0
    assert count_nonzeros([1e-12, 2.0], 1e-9) == 1
    assert count_nonzeros([1.0, -1.0, 3.0], 1e-9) == 3


def test_count_nonzeros_rejects_negative_tol():
    with pytest.raises(InputError):
        count_nonzeros([1.0], -1e-3)


def test_l0_objective_worked_values(worked):
    # best value per support pattern, enumerated by hand: {} -> 0.5, {1} -> 1.0
    assert l0_objective(worked, [1.0, 0.0]) == 0.5
    assert l0_objective(worked, [0.0, 0.0]) == 1.0


def test_l0_objective_zero_transform(rng):
    inst = ProblemInstance(
        LeastSquares(rng.uniform(-1, 1, (3, 2)), rng.uniform(-1, 1, 3)),
        np.zeros((2, 2)),
        lam=0.7,
    )
    x = rng.uniform(-1, 1, 2)
    assert l0_objective(inst, x) == inst.fit_value(x)


def test_capped_objective_worked_value(worked):
    # fit 0, penalty 0.5 * (min(4, 1) + 0)
    assert capped_objective(worked, [1.0, 0.0], 4.0) == 0.5


def test_capped_objective_zero_transform_point(worked):
    x = np.zeros(2)
    assert capped_objective(worked, x, 3.0) == worked.fit_value(x)


def test_capped_never_exceeds_exact(rng):
    for _ in range(20):
        inst = random_instance(rng)
        for _ in range(10):
            x = rng.uniform(-2, 2, inst.n)
            gamma = float(rng.uniform(0.01, 100))
            assert capped_objective(inst, x, gamma) <= l0_objective(inst, x) + 1e-12


def test_capped_monotone_in_gamma(rng):
    for _ in range(20):
        inst = random_instance(rng)
        x = rng.uniform(-2, 2, inst.n)
        vals = [capped_objective(inst, x, g) for g in (0.01, 0.1, 1.0, 10.0, 100.0)]
        assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


def test_split_objective_with_exact_auxiliary_matches_l0(rng, worked):
    for _ in range(10):
        x = rng.uniform(-2, 2, 2)
        v = worked.B @ x
        assert split_objective(worked, x, v, 5.0) == pytest.approx(
            l0_objective(worked, x), abs=1e-12
        )


def test_split_objective_direct_arithmetic():
    # fit + 0.5 * 1 * |2|^2 + 0 with v = 0
    inst = ProblemInstance(LeastSquares(np.eye(2), [0.3, -0.2]), 2 * np.eye(2), lam=0.5)
    x = np.array([1.0, 0.0])
    expected = inst.fit_value(x) + 2.0
    assert split_objective(inst, x, np.zeros(2), 1.0) == pytest.approx(expected, abs=1e-14)


def test_split_minimized_over_v_equals_capped(rng):
    for _ in range(20):
        inst = random_instance(rng)
        x = rng.uniform(-2, 2, inst.n)
        gamma = float(rng.uniform(0.05, 50))
        params = CappedParams(p=inst.p, gamma=gamma)
        v = np.array([split_argmin_scalar(t, params)[0] for t in inst.B @ x])
        assert split_objective(inst, x, v, gamma) == pytest.approx(
            capped_objective(inst, x, gamma), abs=1e-10
        )


def test_finite_set_objective_is_infinite_off_the_points():
    fit = FiniteSet([[1.0, 0.0], [0.0, 2.0]])
    inst = ProblemInstance(fit, np.eye(2), lam=1.0)
    assert l0_objective(inst, [1.0, 0.0]) == 1.0
    assert math.isinf(l0_objective(inst, [0.5, 0.5]))
    assert math.isinf(capped_objective(inst, [0.5, 0.5], 2.0))


def test_l0_affine_fit_counts_residuals():
    fit = L0Affine([[1.0, 0.0], [0.0, 1.0]], [1.0, 0.0])
    inst = ProblemInstance(fit, np.eye(2), lam=1.0)
    assert l0_objective(inst, [1.0, 0.0]) == 1.0  # zero residual, one nonzero
    assert l0_objective(inst, [0.0, 0.0]) == 1.0  # one residual, zero nonzeros


def test_dimension_errors(worked):
    with pytest.raises(InputError):
        l0_objective(worked, [1.0, 0.0, 0.0])
    with pytest.raises(InputError):
        split_objective(worked, [1.0, 0.0], [1.0], 1.0)
    with pytest.raises(InputError):
        ProblemInstance(worked.datafit, np.eye(3), lam=1.0)
    with pytest.raises(InputError):
        ProblemInstance(worked.datafit, np.eye(2), lam=-1.0)
    with pytest.raises(InputError):
        LeastSquares(np.eye(2), [1.0, 0.0, 0.0])
    with pytest.raises(InputError):
        FiniteSet(np.zeros((0, 2)))


def test_instance_arrays_are_readonly(worked):
    assert not worked.B.flags.writeable
    assert not worked.datafit.A.flags.writeable
    with pytest.raises(ValueError):
        worked.B[0, 0] = 7.0
