"""Command-line surface: entropy, kl, modified, sweep, converge, gauss, selftest.

Numbers are printed with 17 significant digits so CSV output is exactly
reproducible.  Exit codes: 0 success, 1 malformed input, 2 validity-domain
violations (the message names the violated inequality).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import closed_form as cf
from . import gaussian, limits, oracle, verification
from .distributions import Distribution, Logarithmic, density_sup, parse_spec
from .errors import (EntrokitError, ParameterError, UnboundedDensityError,
                     ValidityDomainError)

_EXIT_MALFORMED = 1
_EXIT_VALIDITY = 2

# which parameter a sweep varies when --param is not given
_DEFAULT_SWEEP_PARAM = {
    "gamma": "lambda", "exp": "lambda", "chisq": "nu", "laplace": "lambda",
    "lognormal": "m", "normal": "sigma2", "uniform": "b", "poisson": "lambda",
    "binomial": "p", "nbcond": "r", "logarithmic": "p",
}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(_EXIT_MALFORMED)


def _parse_grid(text: str) -> list[float]:
    """Grid syntax: 'start:stop:steps[:log]' or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
            raise ParameterError(
                f"malformed grid {text!r}; expected start:stop:steps[:log]")
        try:
            start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ParameterError(f"malformed grid {text!r}") from exc
        if steps < 1:
            raise ParameterError("grid needs at least one step")
        if len(parts) == 4:
            if start <= 0 or stop <= 0:
                raise ParameterError("log grids need positive endpoints")
            return list(np.geomspace(start, stop, steps))
        return list(np.linspace(start, stop, steps))
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ParameterError(f"malformed grid {text!r}") from exc


def _measure_spec(args) -> cf.EntropySpec:
    return cf.EntropySpec(args.measure, args.alpha, args.beta)


def _emit(lines, out_path):
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _oracle_value(spec: cf.EntropySpec, d: Distribution, cfg: oracle.OracleConfig) -> float:
    if spec.measure == "modified":
        m = density_sup(d).M
        shannon = oracle.entropy_estimate(d, "shannon", None, None, cfg)
        return (shannon + np.log(m)) / m
    return oracle.entropy_estimate(d, spec.measure, spec.alpha, spec.beta, cfg)


def _cmd_entropy(args) -> int:
    d = parse_spec(args.dist)
    spec = _measure_spec(args)
    value = cf.evaluate(spec, d)
    if args.verify:
        cfg = oracle.OracleConfig()
        est = _oracle_value(spec, d, cfg)
        _emit(["closed_form,oracle,abs_error",
               f"{_fmt(value)},{_fmt(est)},{_fmt(abs(value - est))}"], args.out)
    else:
        _emit([_fmt(value)], args.out)
    return 0


def _cmd_kl(args) -> int:
    p = parse_spec(args.p)
    q = parse_spec(args.q)
    value = cf.kl_divergence(p, q)
    if args.verify:
        est = oracle.kl_integral(p, q, oracle.OracleConfig()).value
        _emit(["closed_form,oracle,abs_error",
               f"{_fmt(value)},{_fmt(est)},{_fmt(abs(value - est))}"], args.out)
    else:
        _emit([_fmt(value)], args.out)
    return 0


def _cmd_modified(args) -> int:
    args.measure = "modified"
    args.alpha = None
    args.beta = None
    return _cmd_entropy(args)


def _replace_param(spec_text: str, param: str, value: float) -> Distribution:
    family = spec_text.split(":", 1)[0].strip().lower()
    base = dict(item.split("=") for item in spec_text.split(":", 1)[1].split(","))
    if param not in base:
        raise ParameterError(
            f"family {family!r} has no parameter {param!r} to sweep")
    if param in ("nu", "n"):
        if abs(value - round(value)) > 1e-9:
            raise ParameterError(f"parameter {param!r} needs integer grid values, got {value}")
        base[param] = str(int(round(value)))
    else:
        base[param] = repr(float(value))
    return parse_spec(family + ":" + ",".join(f"{k}={v}" for k, v in base.items()))


def _cmd_sweep(args) -> int:
    parse_spec(args.dist)  # validate the base spec eagerly
    spec = _measure_spec(args)
    family = args.dist.split(":", 1)[0].strip().lower()
    param = args.param or _DEFAULT_SWEEP_PARAM.get(family)
    if param is None:
        raise ParameterError(f"no sweep parameter known for family {family!r}")
    grid = _parse_grid(args.grid)
    cfg = oracle.OracleConfig()
    header = f"{param},{spec.measure}"
    if args.verify:
        header += ",oracle,abs_error"
    lines = [header]
    for value in grid:
        d = _replace_param(args.dist, param, value)
        closed = cf.evaluate(spec, d)
        line = f"{_fmt(value)},{_fmt(closed)}"
        if args.verify:
            est = _oracle_value(spec, d, cfg)
            line += f",{_fmt(est)},{_fmt(abs(closed - est))}"
        lines.append(line)
    _emit(lines, args.out)
    return 0


def _cmd_converge(args) -> int:
    if (args.n_grid is None) == (args.r_grid is None):
        raise ParameterError("converge needs exactly one of --n (binomial to poisson) "
                             "or --r-grid (conditional negative binomial to logarithmic)")
    if args.n_grid is not None:
        if args.lam is None:
            raise ParameterError("binomial experiment needs --lambda")
        ns = [int(round(v)) for v in _parse_grid(args.n_grid)]
        table = limits.binomial_to_poisson(args.lam, ns, perturb=args.perturb)
    else:
        if not args.dist:
            raise ParameterError("nb experiment needs --dist logarithmic:p=...")
        target = parse_spec(args.dist)
        if not isinstance(target, Logarithmic):
            raise ParameterError("nb experiment target must be logarithmic:p=...")
        table = limits.nb_to_logarithmic(target.p, _parse_grid(args.r_grid))
    lines = [f"{table.driver_name},approx,limit,abs_error"]
    for row in table.rows:
        lines.append(f"{_fmt(row.driver)},{_fmt(row.approx)},"
                     f"{_fmt(row.limit)},{_fmt(row.abs_error)}")
    _emit(lines, args.out)
    return 0


def _cmd_gauss(args) -> int:
    grid = _parse_grid(args.hurst_grid)
    rows = gaussian.fgn_det_sweep(args.n, grid)
    lines = ["hurst,det,entropy"]
    for row in rows:
        entropy = "singular" if row.singular else _fmt(row.entropy)
        lines.append(f"{_fmt(row.hurst)},{_fmt(row.det)},{entropy}")
    _emit(lines, args.out)
    return 0


def _cmd_selftest(args) -> int:
    families = verification.ORACLE_FAMILIES
    if args.families:
        requested = tuple(f.strip() for f in args.families.split(",") if f.strip())
        unknown = [f for f in requested if f not in verification.ORACLE_FAMILIES]
        if unknown:
            raise ParameterError(f"unknown families {unknown}; "
                                 f"choose from {verification.ORACLE_FAMILIES}")
        families = requested
    rows = verification.oracle_equivalence(
        families, verification.ORACLE_MEASURES, args.draws, args.seed)
    lines = ["family,measure,draws,max_scaled_error,status"]
    all_ok = True
    for row in rows:
        ok = row.passes(args.tolerance)
        all_ok &= ok
        lines.append(f"{row.family},{row.measure},{row.draws},"
                     f"{_fmt(row.max_error)},{'pass' if ok else 'FAIL'}")
    for name, ok in verification.monotonicity_checks():
        all_ok &= ok
        lines.append(f"monotonicity,{name},,,{'pass' if ok else 'FAIL'}")
    lines.append(f"overall,,,,{'pass' if all_ok else 'FAIL'}")
    _emit(lines, args.out)
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="entrokit",
                     description="closed-form entropies with numerical verification")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_measure_flags(p):
        p.add_argument("--measure", required=True,
                       choices=["shannon", "renyi", "gr1", "tsallis", "gr2", "sm", "modified"])
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--beta", type=float, default=None)

    def add_common(p):
        p.add_argument("--out", default=None, help="write CSV here instead of stdout")
        p.add_argument("--verify", action="store_true",
                       help="recompute with the numerical oracle and print both")

    p = sub.add_parser("entropy", help="one measure of one distribution")
    p.add_argument("--dist", required=True, help="e.g. gamma:lambda=1,mu=2")
    add_measure_flags(p)
    add_common(p)
    p.set_defaults(fn=_cmd_entropy)

    p = sub.add_parser("kl", help="Kullback-Leibler divergence of a same-family pair")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    add_common(p)
    p.set_defaults(fn=_cmd_kl)

    p = sub.add_parser("modified", help="modified Shannon entropy")
    p.add_argument("--dist", required=True)
    add_common(p)
    p.set_defaults(fn=_cmd_modified)

    p = sub.add_parser("sweep", help="measure along a parameter grid, CSV")
    p.add_argument("--dist", required=True)
    add_measure_flags(p)
    p.add_argument("--param", default=None,
                   help="parameter to vary (default: the family's rate-like one)")
    p.add_argument("--grid", required=True, help="start:stop:steps[:log] or v1,v2,...")
    add_common(p)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("converge", help="entropy convergence experiments, CSV")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="poisson intensity for the binomial experiment")
    p.add_argument("--n", dest="n_grid", default=None,
                   help="binomial sizes, e.g. 10,100,1000,10000")
    p.add_argument("--perturb", type=float, default=0.0,
                   help="use p_n = lambda/n * (1 + c/n)")
    p.add_argument("--dist", default=None,
                   help="logarithmic:p=... target for the nb experiment")
    p.add_argument("--r-grid", dest="r_grid", default=None,
                   help="decreasing r values in (0, 1/2)")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_converge)

    p = sub.add_parser("gauss", help="fGn covariance determinant sweep, CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--hurst-grid", dest="hurst_grid", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_gauss)

    p = sub.add_parser("selftest", help="oracle-equivalence and monotonicity report")
    p.add_argument("--families", default=None,
                   help="comma list, e.g. exp,gamma (default: all)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--draws", type=int, default=60)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else _EXIT_MALFORMED
    except (ValidityDomainError, UnboundedDensityError) as exc:
        print(f"entrokit: validity domain: {exc}", file=sys.stderr)
        return _EXIT_VALIDITY
    except EntrokitError as exc:
        print(f"entrokit: error: {exc}", file=sys.stderr)
        return _EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
