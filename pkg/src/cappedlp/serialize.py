"""Reading and writing problem documents.

A problem file is a JSON object with a tagged data fit, the transform matrix,
the penalty weight and exponent, and optional solver overrides:

    {
      "datafit": {"type": "least_squares", "A": [[1, 0], [0, 1]], "b": [1, 0]},
      "B": [[1, 0], [0, 1]],
      "lambda": 0.5,
      "p": 2,
      "solver": {"gamma0": 0.01, "gamma_factor": 4, "gamma_max": 1e8}
    }

Data-fit tags: ``least_squares`` and ``l0_affine`` take ``A`` and ``b``;
``finite_set`` takes ``points``.  Every validation error names the offending
field.  Serialization uses Python's shortest round-trip float representation,
so dumping and re-parsing reproduces every number bit-exactly.
"""

import json

from .errors import InputError, ProblemFormatError
from .problem import FiniteSet, L0Affine, LeastSquares, ProblemInstance
from .solver import SolverConfig

_DATAFIT_TAGS = ("least_squares", "l0_affine", "finite_set")
_SOLVER_KEYS = ("max_iters", "rel_tol", "gamma0", "gamma_factor", "gamma_max", "tol_zero")


def _require(doc, key, field):
    if key not in doc:
        raise ProblemFormatError(field, "missing required field")
    return doc[key]


def _positive(value, field):
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise ProblemFormatError(field, f"must be a number, got {value!r}") from None
    if not x > 0:
        raise ProblemFormatError(field, f"must be positive, got {value!r}")
    return x


def _build(factory, field, *args, **kwargs):
    try:
        return factory(*args, **kwargs)
    except InputError as exc:
        raise ProblemFormatError(field, str(exc)) from None


def parse_problem(doc):
    """Validate a problem document; returns ``(ProblemInstance, SolverConfig)``."""
    if not isinstance(doc, dict):
        raise ProblemFormatError("<document>", "must be a JSON object")
    known = {"datafit", "B", "lambda", "p", "solver"}
    for key in doc:
        if key not in known:
            raise ProblemFormatError(key, "unknown field")

    raw_fit = _require(doc, "datafit", "datafit")
    if not isinstance(raw_fit, dict):
        raise ProblemFormatError("datafit", "must be an object with a type tag")
    tag = _require(raw_fit, "type", "datafit.type")
    if tag not in _DATAFIT_TAGS:
        raise ProblemFormatError(
            "datafit.type", f"must be one of {', '.join(_DATAFIT_TAGS)}, got {tag!r}"
        )
    if tag == "finite_set":
        extra = set(raw_fit) - {"type", "points"}
        if extra:
            raise ProblemFormatError(f"datafit.{sorted(extra)[0]}", "unknown field")
        points = _require(raw_fit, "points", "datafit.points")
        datafit = _build(FiniteSet, "datafit.points", points)
    else:
        extra = set(raw_fit) - {"type", "A", "b"}
        if extra:
            raise ProblemFormatError(f"datafit.{sorted(extra)[0]}", "unknown field")
        A = _require(raw_fit, "A", "datafit.A")
        b = _require(raw_fit, "b", "datafit.b")
        cls = LeastSquares if tag == "least_squares" else L0Affine
        datafit = _build(cls, "datafit", A, b)

    B = _require(doc, "B", "B")
    lam = _positive(_require(doc, "lambda", "lambda"), "lambda")
    p = _positive(doc.get("p", 2.0), "p")
    instance = _build(ProblemInstance, "B", datafit, B, lam=lam, p=p)

    overrides = doc.get("solver", {})
    if not isinstance(overrides, dict):
        raise ProblemFormatError("solver", "must be an object")
    for key in overrides:
        if key not in _SOLVER_KEYS:
            raise ProblemFormatError(f"solver.{key}", "unknown field")
    try:
        config = SolverConfig(**overrides)
    except InputError as exc:
        raise ProblemFormatError("solver", str(exc)) from None
    return instance, config


def parse_problem_file(path):
    """Load and validate a problem file; returns ``(ProblemInstance, SolverConfig)``."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ProblemFormatError("<file>", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise ProblemFormatError("<document>", f"invalid JSON: {exc}") from None
    return parse_problem(doc)


def problem_to_dict(inst, config=None):
    """Problem document for an instance, optionally with solver overrides."""
    fit = inst.datafit
    if isinstance(fit, FiniteSet):
        datafit = {"type": "finite_set", "points": fit.points.tolist()}
    else:
        tag = "least_squares" if isinstance(fit, LeastSquares) else "l0_affine"
        datafit = {"type": tag, "A": fit.A.tolist(), "b": fit.b.tolist()}
    doc = {
        "datafit": datafit,
        "B": inst.B.tolist(),
        "lambda": inst.lam,
        "p": inst.p,
    }
    if config is not None:
        doc["solver"] = {
            "max_iters": config.max_iters,
            "rel_tol": config.rel_tol,
            "gamma0": config.gamma0,
            "gamma_factor": config.gamma_factor,
            "gamma_max": config.gamma_max,
            "tol_zero": config.tol_zero,
        }
    return doc


def write_problem_file(path, inst, config=None):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(problem_to_dict(inst, config), handle, indent=2)
        handle.write("\n")
