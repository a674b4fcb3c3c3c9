"""Command-line front end.

Subcommands::

    oracle       exact minimum of the count-penalized objective (JSON)
    solve        one surrogate solve at a fixed scale (JSON)
    sweep        continuation path over increasing scales (CSV or JSON)
    marginal     ladder of (fit value, count) levels (JSON)
    breakpoints  envelope breakpoints of the optimal value in lambda (JSON)
    threshold    exactness thresholds and the kernel bound (JSON)

Each subcommand reads a problem file or generates a seeded random instance
with ``--random n,m,r``.  Exit codes: 0 success, 2 usage, 3 load error,
4 capacity, 5 unsupported configuration.
"""

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import oracle, path, thresholds
from .errors import CapacityError, InputError, UnsupportedConfigError
from .problem import DEFAULT_TOL_ZERO, FiniteSet, L0Affine, LeastSquares, ProblemInstance
from .problem import count_nonzeros, l0_objective
from .serialize import parse_problem_file
from .solver import SolverConfig, bcd_solve, continuation_solve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_LOAD = 3
EXIT_CAPACITY = 4
EXIT_UNSUPPORTED = 5


def _finite(value):
    return None if value is None or not math.isfinite(value) else float(value)


def _emit(doc):
    print(json.dumps(doc, indent=2, allow_nan=False))


def _minimizer_doc(mz):
    support = mz.support
    if support and isinstance(support[0], tuple):
        support = [list(s) for s in support]
    else:
        support = list(support)
    return {"support": support, "x": mz.x.tolist()}


def _report_doc(report):
    return {
        "x": report.x.tolist(),
        "v": report.v.tolist(),
        "split_value": report.split_value,
        "psi_value": report.psi_value,
        "gamma": report.gamma,
        "iterations": report.iterations,
        "converged": report.converged,
        "trace": list(report.trace),
    }


def _add_source_args(parser):
    parser.add_argument("problem", nargs="?", help="problem file (JSON)")
    parser.add_argument(
        "--random",
        metavar="N,M,R",
        help="generate a random least-squares instance instead of reading a file",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for --random")
    parser.add_argument(
        "--lambda", dest="lam", type=float, default=None, help="override the penalty weight"
    )
    parser.add_argument(
        "--tol-zero", dest="tol_zero", type=float, default=None,
        help="zero-count tolerance for evaluations",
    )


def _load(args):
    if args.random is not None:
        try:
            n, m, r = (int(part) for part in args.random.split(","))
        except ValueError:
            raise InputError("--random expects three integers n,m,r") from None
        rng = np.random.default_rng(args.seed)
        inst = ProblemInstance(
            LeastSquares(rng.uniform(-1, 1, (r, n)), rng.uniform(-1, 1, r)),
            rng.uniform(-1, 1, (m, n)),
            lam=1.0 if args.lam is None else args.lam,
            p=2.0,
        )
        config = SolverConfig()
    elif args.problem is not None:
        inst, config = parse_problem_file(args.problem)
        if args.lam is not None:
            inst = dataclasses.replace(inst, lam=args.lam)
    else:
        raise InputError("a problem file or --random n,m,r is required")
    tol_zero = DEFAULT_TOL_ZERO if args.tol_zero is None else args.tol_zero
    if tol_zero < 0:
        raise InputError("--tol-zero must be nonnegative")
    return inst, config, tol_zero


def _cmd_oracle(args):
    inst, _, tol_zero = _load(args)
    if args.gamma is not None:
        result = oracle.min_capped(inst, args.gamma, tol_zero)
        doc = {"objective": "capped", "gamma": args.gamma}
    else:
        result = oracle.min_l0(inst, tol_zero)
        doc = {"objective": "l0"}
    doc.update(
        {
            "value": result.value,
            "feasible": result.feasible,
            "minimizers": [_minimizer_doc(mz) for mz in result.minimizers],
        }
    )
    _emit(doc)
    return EXIT_OK


def _cmd_solve(args):
    inst, config, _ = _load(args)
    report = bcd_solve(inst, args.gamma, config)
    _emit(_report_doc(report))
    return EXIT_OK


def _sweep_config(args, config):
    overrides = {}
    if args.gamma_start is not None:
        overrides["gamma0"] = args.gamma_start
    if args.gamma_factor is not None:
        overrides["gamma_factor"] = args.gamma_factor
    if args.gamma_max is not None:
        overrides["gamma_max"] = args.gamma_max
    return dataclasses.replace(config, **overrides) if overrides else config


def _cmd_sweep(args):
    inst, config, tol_zero = _load(args)
    config = _sweep_config(args, config)
    reports = continuation_solve(inst, config)
    rows = []
    for report in reports:
        row = {
            "gamma": report.gamma,
            "split_value": report.split_value,
            "psi_value": report.psi_value,
            "phi_value": l0_objective(inst, report.x, tol_zero),
            "nnz_Bx": count_nonzeros(inst.B @ report.x, tol_zero),
        }
        if args.with_oracle:
            row["oracle_value"] = oracle.min_capped(inst, report.gamma, tol_zero).value
        rows.append(row)
    if args.format == "json":
        _emit(rows)
    else:
        header = ["gamma", "split_value", "psi_value", "phi_value", "nnz_Bx"]
        if args.with_oracle:
            header.append("oracle_value")
        print(",".join(header))
        for row in rows:
            print(",".join(repr(row[key]) if isinstance(row[key], float) else str(row[key]) for key in header))
    return EXIT_OK


def _cmd_marginal(args):
    inst, _, tol_zero = _load(args)
    levels = path.build_levels(inst, tol_zero)
    _emit(
        {
            "num_levels": levels.num_levels,
            "fit_values": list(levels.fit_values),
            "counts": list(levels.counts),
            "minimizers": [
                [_minimizer_doc(mz) for mz in reps] for reps in levels.minimizers
            ],
        }
    )
    return EXIT_OK


def _sample_weights(bps):
    positive = list(bps.lambdas[:-1])
    if not positive:
        return [1.0]
    samples = []
    samples.append(positive[0] * 2.0)
    for i, lam in enumerate(positive):
        samples.append(lam)
        lower = bps.lambdas[i + 1]
        samples.append(lower + 0.5 * (lam - lower) if lower > 0 else 0.5 * lam)
    return samples


def _cmd_breakpoints(args):
    inst, _, tol_zero = _load(args)
    levels = path.build_levels(inst, tol_zero)
    bps = path.build_breakpoints(levels)
    samples = [
        {"lam": lam, "value": path.optimal_value(levels, lam)}
        for lam in _sample_weights(bps)
    ]
    _emit(
        {
            "num_levels": levels.num_levels,
            "num_breakpoints": bps.num_breakpoints,
            "active_levels": list(bps.active_levels),
            "lambdas": list(bps.lambdas),
            "tie_sets": [sorted(s) for s in bps.tie_sets],
            "samples": samples,
        }
    )
    return EXIT_OK


def _cmd_threshold(args):
    inst, config, tol_zero = _load(args)
    if args.mode == "finite-c":
        if not isinstance(inst.datafit, FiniteSet):
            raise UnsupportedConfigError("threshold --mode finite-c requires a finite_set data fit")
        report = thresholds.finite_set_threshold(
            inst.datafit.points, inst.B, inst.p, tol_zero
        )
        _emit(
            {
                "mode": "finite-c",
                "best_count": report.best_count,
                "critical_magnitude": _finite(report.critical_magnitude),
                "gamma_star": report.gamma_star,
            }
        )
    elif args.mode == "l0l0":
        if not isinstance(inst.datafit, L0Affine):
            raise UnsupportedConfigError("threshold --mode l0l0 requires an l0_affine data fit")
        report = thresholds.l0_l0_threshold(
            inst.datafit.A, inst.datafit.b, inst.B, inst.lam, inst.p, tol_zero
        )
        _emit(
            {
                "mode": "l0l0",
                "best_value": report.best_value,
                "coupling_gap": _finite(report.coupling_gap),
                "gamma_star": report.gamma_star,
            }
        )
    else:
        if not isinstance(inst.datafit, LeastSquares):
            raise UnsupportedConfigError("threshold --mode bound requires a least_squares fit")
        alpha = args.alpha
        if alpha is None:
            alpha = oracle.min_l0(inst, tol_zero).value
        gamma0 = config.gamma0 if args.gamma0 is None else args.gamma0
        report = thresholds.kernel_bound_certificate(inst, gamma0, alpha)
        _emit(
            {
                "mode": "bound",
                "gamma0": gamma0,
                "alpha": alpha,
                "level_set_sup": report.level_set_sup,
                "sigma_kernel": _finite(report.sigma_kernel),
                "radius": report.radius,
                "kernel_dim": report.kernel_dim,
            }
        )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cappedlp",
        description="Capped power-penalty approximations of count-penalized least squares.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_oracle = sub.add_parser("oracle", help="exact minimum by pattern enumeration")
    _add_source_args(p_oracle)
    p_oracle.add_argument(
        "--gamma", type=float, default=None,
        help="minimize the capped surrogate at this scale instead of the exact count",
    )
    p_oracle.set_defaults(func=_cmd_oracle)

    p_solve = sub.add_parser("solve", help="block coordinate descent at a fixed scale")
    _add_source_args(p_solve)
    p_solve.add_argument("--gamma", type=float, required=True, help="approximation scale")
    p_solve.set_defaults(func=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="continuation path over increasing scales")
    _add_source_args(p_sweep)
    p_sweep.add_argument("--gamma-start", type=float, default=None)
    p_sweep.add_argument("--gamma-factor", type=float, default=None)
    p_sweep.add_argument("--gamma-max", type=float, default=None)
    p_sweep.add_argument("--with-oracle", action="store_true", help="add the exact surrogate minimum per scale")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_marginal = sub.add_parser("marginal", help="ladder of (fit value, count) levels")
    _add_source_args(p_marginal)
    p_marginal.set_defaults(func=_cmd_marginal)

    p_breaks = sub.add_parser("breakpoints", help="envelope breakpoints over the weight")
    _add_source_args(p_breaks)
    p_breaks.set_defaults(func=_cmd_breakpoints)

    p_thresh = sub.add_parser("threshold", help="exactness thresholds and kernel bound")
    _add_source_args(p_thresh)
    p_thresh.add_argument("--mode", choices=("finite-c", "l0l0", "bound"), required=True)
    p_thresh.add_argument("--gamma0", type=float, default=None, help="base scale for --mode bound")
    p_thresh.add_argument("--alpha", type=float, default=None, help="level bound for --mode bound")
    p_thresh.set_defaults(func=_cmd_threshold)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UnsupportedConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
