import dataclasses

import numpy as np
import pytest

from cappedlp import (
    FiniteSet,
    InputError,
    LeastSquares,
    ProblemInstance,
    SolverConfig,
    UnsupportedConfigError,
    bcd_solve,
    capped_objective,
    continuation_schedule,
    continuation_solve,
    least_squares,
    min_capped,
    split_objective,
)

from instgen import planted_instance, random_instance


@pytest.fixture
def worked():
    return ProblemInstance(LeastSquares(np.eye(2), [1.0, 0.0]), np.eye(2), lam=0.5, p=2.0)


def test_config_validation():
    with pytest.raises(InputError):
        SolverConfig(max_iters=0)
    with pytest.raises(InputError):
        SolverConfig(gamma_factor=1.0)
    with pytest.raises(InputError):
        SolverConfig(gamma0=10.0, gamma_max=1.0)
    with pytest.raises(InputError):
        SolverConfig(rel_tol=0.0)


def test_unsupported_configurations(worked):
    with pytest.raises(UnsupportedConfigError):
        bcd_solve(dataclasses.replace(worked, p=1.0), 1.0)
    inst = ProblemInstance(FiniteSet([[1.0, 0.0]]), np.eye(2), lam=1.0)
    with pytest.raises(UnsupportedConfigError):
        bcd_solve(inst, 1.0)


def test_zero_transform_solves_in_one_step(rng):
    A = rng.uniform(-1, 1, (4, 3))
    b = rng.uniform(-1, 1, 4)
    inst = ProblemInstance(LeastSquares(A, b), np.zeros((2, 3)), lam=1.0)
    report = bcd_solve(inst, 10.0)
    x_ls, resid = least_squares(A, b)
    assert np.allclose(report.x, x_ls, atol=1e-10)
    assert np.all(report.v == 0.0)
    assert report.split_value == pytest.approx(resid, abs=1e-10)


def test_worked_fixed_point(worked):
    report = bcd_solve(worked, 100.0)
    assert np.allclose(report.x, [1.0, 0.0], atol=1e-12)
    assert np.allclose(report.v, [1.0, 0.0], atol=1e-12)
    assert report.split_value == pytest.approx(0.5, abs=1e-12)
    assert report.converged


def test_trace_is_nonincreasing(rng):
    for _ in range(15):
        inst = random_instance(rng, n_max=4, m_max=4)
        gamma = float(rng.uniform(0.1, 1000))
        report = bcd_solve(inst, gamma)
        trace = report.trace
        assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))


def test_terminal_pair_is_mutually_optimal(rng):
    for _ in range(15):
        inst = random_instance(rng, n_max=4, m_max=4)
        gamma = float(rng.uniform(0.5, 500))
        report = bcd_solve(inst, gamma)
        bx = inst.B @ report.x
        expected = np.where(gamma * bx**2 > 1.0, bx, 0.0)
        assert np.array_equal(report.v, expected)
        assert report.split_value == pytest.approx(report.psi_value, abs=1e-10)


def test_split_value_never_beats_oracle(rng):
    for _ in range(10):
        inst = random_instance(rng, n_max=4, m_max=4)
        gamma = float(rng.uniform(0.5, 100))
        report = bcd_solve(inst, gamma)
        exact = min_capped(inst, gamma).value
        assert report.split_value >= exact - 1e-9


def test_warm_start_beats_cold_start_on_worked_example(worked):
    warm = bcd_solve(worked, 100.0)
    cold = bcd_solve(worked, 100.0, x0=np.zeros(2))
    # the zero start stalls on a spurious fixed point well above the optimum
    assert warm.split_value == pytest.approx(0.5, abs=1e-12)
    assert cold.split_value > 0.9


def test_schedule_reaches_gamma_max_exactly():
    config = SolverConfig(gamma0=1e-2, gamma_factor=4.0, gamma_max=1e8)
    schedule = continuation_schedule(config)
    assert schedule[0] == 1e-2
    assert schedule[-1] == 1e8
    assert all(b > a for a, b in zip(schedule, schedule[1:]))


def test_degenerate_schedule_matches_single_solve(worked):
    config = SolverConfig(gamma0=50.0, gamma_max=50.0)
    reports = continuation_solve(worked, config)
    assert len(reports) == 1
    single = bcd_solve(worked, 50.0, config)
    assert np.array_equal(reports[0].x, single.x)
    assert reports[0].split_value == single.split_value


def test_continuation_bounded_below_by_oracle(rng):
    config = SolverConfig(gamma0=0.01, gamma_factor=8.0, gamma_max=1e6)
    for _ in range(5):
        inst = random_instance(rng, n_max=3, m_max=3)
        reports = continuation_solve(inst, config)
        oracle_values = [min_capped(inst, r.gamma).value for r in reports]
        for report, exact in zip(reports, oracle_values):
            achieved = capped_objective(inst, report.x, report.gamma)
            assert achieved >= exact - 1e-9
        assert all(a <= b + 1e-9 for a, b in zip(oracle_values, oracle_values[1:]))


def test_continuation_recovers_planted_optimum_often(rng):
    from cappedlp import l0_objective, min_l0

    hits = 0
    total = 25
    for _ in range(total):
        inst = planted_instance(rng)
        reports = continuation_solve(inst)
        final = l0_objective(inst, reports[-1].x)
        exact = min_l0(inst).value
        assert final >= exact - 1e-9 * (1 + abs(exact))
        if final <= exact + 1e-6:
            hits += 1
    assert hits >= 0.8 * total
