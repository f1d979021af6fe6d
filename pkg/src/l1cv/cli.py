"""Command-line interface.

Subcommands ``fig1`` .. ``fig6`` run the corresponding scenario with the
reference parameter sets as defaults, overridable by a TOML config file
and ``--set key=value`` flags; ``sweep`` runs a single-instance lambda
sweep; ``solve`` solves one LASSO problem from CSV inputs; ``theory``
evaluates the closed forms.

Exit codes: 0 success, 1 usage error, 2 config/schema error, 3 runtime
error.  ``--out`` defaults to $L1CV_OUT_DIR, then the current directory.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import theory
from .errors import ConfigError, InvalidArgumentError, ParameterRegimeError
from .experiments import RUNNERS, SCENARIOS, parse_override, resolve_config
from .experiments.config import DEFAULTS
from .solver import LassoProblem, SolverOptions, lp_oracle, solve_l1_lasso

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _scenario_epilog(name: str) -> str:
    pairs = ", ".join(f"{k}={v}" for k, v in sorted(DEFAULTS[name].items())
                      if k not in ("scenario", "schema_version"))
    return f"defaults: {pairs}"


def build_parser() -> _Parser:
    parser = _Parser(prog="l1cv", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="command")

    for name in SCENARIOS:
        help_text = ("single-instance lambda sweep" if name == "sweep" else
                     f"run the {name} scenario")
        p = sub.add_parser(name, help=help_text, epilog=_scenario_epilog(name),
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--config", help="TOML config file overlaying the defaults")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE", help="config override (repeatable)")
        p.add_argument("--seed", type=int, help="root seed (shorthand for --set seed=...)")
        p.add_argument("--out", help="output directory (default $L1CV_OUT_DIR or .)")
        p.add_argument("--jobs", type=int, help="worker processes")

    p = sub.add_parser("solve", help="solve one L1-L1 LASSO problem from CSV inputs")
    p.add_argument("--matrix", required=True, help="CSV file, one matrix row per line")
    p.add_argument("--rhs", required=True, help="CSV file with the measurement vector")
    p.add_argument("--lam", type=float, required=True, help="regularization weight")
    p.add_argument("--oracle", action="store_true", help="solve with the LP oracle instead")
    p.add_argument("--tolerance", type=float, default=SolverOptions().tolerance)
    p.add_argument("--max-iterations", type=int, default=SolverOptions().max_iterations)
    p.add_argument("--out", help="write the result JSON here instead of stdout")

    p = sub.add_parser("theory", help="evaluate a closed form and print the result")
    p.add_argument("--op", required=True,
                   choices=["folded-mean", "abs-moment", "lemma1", "theorem1",
                            "theorem1-width", "lemma2", "theorem2"])
    p.add_argument("--mu", type=float, help="folded-mean: Gaussian mean")
    p.add_argument("--sigma", type=float, help="folded-mean: Gaussian std")
    p.add_argument("--rho", type=float, help="abs-moment correlation / theorem1 parameter")
    p.add_argument("--eps-x", type=float, help="recovery error (lemma1)")
    p.add_argument("--eps-cv", type=float, help="observed L1 CV error (theorem1)")
    p.add_argument("--eps-p", type=float, help="first recovery error (lemma2/theorem2)")
    p.add_argument("--eps-q", type=float, help="second recovery error (lemma2/theorem2)")
    p.add_argument("--inner-pq", type=float, help="error inner product (lemma2/theorem2)")
    p.add_argument("--b", type=float, help="impulse probability")
    p.add_argument("--mu-g", type=float, help="impulse magnitude mean")
    p.add_argument("--sigma-g", type=float, help="impulse magnitude std")
    p.add_argument("--sigma-n", type=float, help="Gaussian noise scale")
    p.add_argument("--m", type=int, help="total measurement rows")
    p.add_argument("--m-cv", type=int, help="holdout rows")
    return parser


def _out_dir(arg):
    return arg or os.environ.get("L1CV_OUT_DIR") or "."


def _load_toml(path):
    try:
        import tomllib
    except ImportError:  # Python 3.10
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config: file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config: invalid TOML in {path}: {exc}")


def _run_scenario(args) -> int:
    overrides = [parse_override(text) for text in args.overrides]
    if args.seed is not None:
        overrides.append(("seed", args.seed))
    if args.jobs is not None:
        overrides.append(("jobs", args.jobs))
    file_cfg = _load_toml(args.config) if args.config else None
    cfg = resolve_config(args.command, file_cfg, overrides)
    record = RUNNERS[args.command](cfg)
    json_path, csv_path = record.write(_out_dir(args.out))
    print(f"wrote {json_path} and {csv_path}")
    return EXIT_OK


def _run_solve(args) -> int:
    matrix = np.atleast_2d(np.loadtxt(args.matrix, delimiter=",", dtype=np.float64))
    rhs = np.atleast_1d(np.loadtxt(args.rhs, delimiter=",", dtype=np.float64))
    problem = LassoProblem(matrix=matrix, rhs=rhs, lam=args.lam)
    if args.oracle:
        result = lp_oracle(problem)
    else:
        opts = SolverOptions(tolerance=args.tolerance,
                             max_iterations=args.max_iterations)
        result = solve_l1_lasso(problem, opts)
    payload = {
        "objective": result.objective,
        "iterations": result.iterations,
        "converged": result.converged,
        "primal_residual": result.primal_residual,
        "dual_residual": result.dual_residual,
        "estimate": result.estimate.tolist(),
    }
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return EXIT_OK


def _require(args, names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise _UsageError(f"--op {args.op} requires --" + ", --".join(missing))


def _theory_params(args) -> theory.TheoryParams:
    _require(args, ["b", "mu-g", "sigma-g", "sigma-n", "m", "m-cv"])
    return theory.TheoryParams(b=args.b, mu_g=args.mu_g, sigma_g=args.sigma_g,
                               sigma_n=args.sigma_n, m=args.m, m_cv=args.m_cv)


def _run_theory(args) -> int:
    if args.op == "folded-mean":
        _require(args, ["mu", "sigma"])
        print(repr(theory.folded_gaussian_mean(args.mu, args.sigma)))
    elif args.op == "abs-moment":
        _require(args, ["rho"])
        print(repr(theory.abs_product_moment(args.rho)))
    elif args.op == "lemma1":
        _require(args, ["eps-x"])
        d = theory.lemma1_distribution(args.eps_x, _theory_params(args))
        print(json.dumps({"mean": d.mean, "variance": d.variance}, sort_keys=True))
    elif args.op in ("theorem1", "theorem1-width"):
        _require(args, ["eps-cv", "rho"])
        p = _theory_params(args)
        if args.op == "theorem1":
            ci = theory.theorem1_interval(args.eps_cv, args.rho, p)
            print(json.dumps({"lower": ci.lower, "upper": ci.upper,
                              "confidence": ci.confidence,
                              "lower_clamped": ci.lower_clamped}, sort_keys=True))
        else:
            print(repr(theory.theorem1_width(args.eps_cv, args.rho, p)))
    else:  # lemma2 / theorem2
        _require(args, ["eps-p", "eps-q", "inner-pq"])
        pair = theory.PairErrors(eps_p=args.eps_p, eps_q=args.eps_q,
                                 inner_pq=args.inner_pq)
        p = _theory_params(args)
        if args.op == "lemma2":
            d = theory.lemma2_distribution(pair, p)
            print(json.dumps({"mean": d.mean, "variance": d.variance}, sort_keys=True))
        else:
            print(repr(theory.theorem2_probability(pair, p)))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError("a subcommand is required")
        if args.command in RUNNERS:
            return _run_scenario(args)
        if args.command == "solve":
            return _run_solve(args)
        return _run_theory(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidArgumentError, ParameterRegimeError, RuntimeError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
