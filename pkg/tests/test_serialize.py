import json
import math

import numpy as np
import pytest

from cappedlp import (
    FiniteSet,
    L0Affine,
    LeastSquares,
    ProblemFormatError,
    ProblemInstance,
    SolverConfig,
    parse_problem,
    parse_problem_file,
    problem_to_dict,
    write_problem_file,
)


def minimal_doc():
    return {
        "datafit": {"type": "least_squares", "A": [[1.0, 0.0], [0.0, 1.0]], "b": [1.0, 0.0]},
        "B": [[1.0, 0.0], [0.0, 1.0]],
        "lambda": 0.5,
        "p": 2,
    }


def test_parse_minimal_document():
    inst, config = parse_problem(minimal_doc())
    assert isinstance(inst.datafit, LeastSquares)
    assert inst.lam == 0.5 and inst.p == 2.0 and inst.m == 2
    assert config == SolverConfig()


def test_parse_negative_lambda_names_field():
    doc = minimal_doc()
    doc["lambda"] = -1.0
    with pytest.raises(ProblemFormatError, match="^lambda:"):
        parse_problem(doc)


def test_parse_bad_transform_names_field():
    doc = minimal_doc()
    doc["B"] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
    with pytest.raises(ProblemFormatError, match="^B:"):
        parse_problem(doc)


def test_parse_unknown_fields_rejected():
    doc = minimal_doc()
    doc["extra"] = 1
    with pytest.raises(ProblemFormatError, match="^extra:"):
        parse_problem(doc)
    doc = minimal_doc()
    doc["solver"] = {"gamma_zero": 1.0}
    with pytest.raises(ProblemFormatError, match="^solver.gamma_zero:"):
        parse_problem(doc)


def test_parse_bad_datafit_type():
    doc = minimal_doc()
    doc["datafit"] = {"type": "quadratic", "A": [[1.0]], "b": [1.0]}
    with pytest.raises(ProblemFormatError, match="^datafit.type:"):
        parse_problem(doc)


def test_parse_solver_overrides():
    doc = minimal_doc()
    doc["solver"] = {"gamma0": 0.5, "gamma_max": 100.0, "max_iters": 50}
    _, config = parse_problem(doc)
    assert config.gamma0 == 0.5 and config.gamma_max == 100.0 and config.max_iters == 50
    doc["solver"] = {"gamma0": -1.0}
    with pytest.raises(ProblemFormatError, match="^solver:"):
        parse_problem(doc)


def test_parse_finite_set_and_l0_affine():
    doc = minimal_doc()
    doc["datafit"] = {"type": "finite_set", "points": [[1.0, 0.0], [0.0, 0.5]]}
    inst, _ = parse_problem(doc)
    assert isinstance(inst.datafit, FiniteSet)
    doc["datafit"] = {"type": "l0_affine", "A": [[1.0, 0.0]], "b": [2.0]}
    inst, _ = parse_problem(doc)
    assert isinstance(inst.datafit, L0Affine)


def test_parse_file_errors(tmp_path):
    with pytest.raises(ProblemFormatError, match="^<file>:"):
        parse_problem_file(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ProblemFormatError, match="^<document>:"):
        parse_problem_file(bad)


def test_round_trip_is_bit_exact(tmp_path, rng):
    A = rng.standard_normal((3, 4)) * math.pi
    b = rng.standard_normal(3) / 3.0
    B = rng.standard_normal((2, 4)) * 1e-7
    inst = ProblemInstance(LeastSquares(A, b), B, lam=1.0 / 3.0, p=0.7)
    config = SolverConfig(gamma0=2.0 / 7.0, gamma_max=1e9)
    target = tmp_path / "prob.json"
    write_problem_file(target, inst, config)
    parsed, parsed_config = parse_problem_file(target)
    assert np.array_equal(parsed.datafit.A, A)
    assert np.array_equal(parsed.datafit.b, b)
    assert np.array_equal(parsed.B, B)
    assert parsed.lam == inst.lam and parsed.p == inst.p
    assert parsed_config == config
    # a second dump is byte-identical
    assert json.dumps(problem_to_dict(parsed, parsed_config)) == json.dumps(
        problem_to_dict(inst, config)
    )
