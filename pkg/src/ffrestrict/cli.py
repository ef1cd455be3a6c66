"""Command-line front end.

Commands: build-set, transform, salem-profile, salem-fit, exponents,
ext-norm, sweep, verify.  Outputs are CSV for bulk numeric data and JSON
for structured single reports; every file embeds a config echo that
reproduces the run.  Exit codes: 0 success, 1 invalid config,
2 computation error, 3 verify failure.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys
from datetime import datetime, timezone
from typing import Iterator, Sequence, TextIO

from . import __version__, families, reports, verify
from .field import DEFAULT_POINT_CAP, is_prime
from .restriction import (
    PowerIterConfig,
    extension_norm_lower_bound,
    growth_sweep,
)
from .salem import fit_salem_exponent, profile
from .spectral import fourier_forward, fourier_inverse
from .ensembles import is_sidon, surface_measure


class ConfigError(Exception):
    """Invalid configuration; carries one or more messages."""

    def __init__(self, messages: Sequence[str]):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; route through ConfigError
    # so invalid configs uniformly exit 1
    def error(self, message: str):
        raise ConfigError([message])


@contextlib.contextmanager
def _open_out(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fp:
            yield fp


def _parse_grid(text: str) -> list[float]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        out.append(math.inf if tok in ("inf", "infinity") else float(tok))
    if not out:
        raise ConfigError(["empty exponent grid"])
    return out


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError([f"bad field-size list {text!r}: {exc}"])


def _family_params(args: argparse.Namespace, errors: list[str]) -> dict:
    """Collect only the parameters this family actually takes; the common
    --seed flag doubles as the construction seed for seeded families.
    Problems land in `errors` so they can be reported together."""
    try:
        spec = families.get(args.family)
    except ValueError as exc:
        errors.append(str(exc))
        return {}
    accepted = {key for key, _ in spec.param_defaults}
    params = {}
    for key in ("d", "j", "k", "m", "r", "n", "seed", "percent",
                "target_size"):
        value = getattr(args, key, None)
        if key in accepted and value is not None:
            params[key] = value
    try:
        spec.resolve_params(params)
    except ValueError as exc:
        errors.append(str(exc))
    return params


def _timestamp(args: argparse.Namespace) -> str | None:
    if getattr(args, "timestamp", False):
        return datetime.now(timezone.utc).isoformat()
    return None


def _validate_field_size(p: int, errors: list[str]) -> None:
    if not is_prime(p):
        errors.append(f"field size {p} is not prime")


def _power_config(args: argparse.Namespace) -> PowerIterConfig:
    return PowerIterConfig(
        random_starts=args.starts,
        max_iter=args.max_iter,
        tol=args.tol,
        seed=args.seed,
        kernel=args.kernel,
        threads=args.threads,
    )


# ------------------------------------------------------------- subcommands

def cmd_build_set(args: argparse.Namespace) -> int:
    errors: list[str] = []
    _validate_field_size(args.p, errors)
    params = _family_params(args, errors)
    if errors:
        raise ConfigError(errors)
    e = families.build_set(args.family, args.p, params,
                           max_points=args.max_points)
    info = sys.stderr if args.out == "-" else sys.stdout
    print(f"family: {args.family}", file=info)
    print(f"cardinality: {e.cardinality}", file=info)
    print(f"alpha: {e.alpha():.6f}", file=info)
    if args.family.startswith("sidon"):
        print(f"is_sidon: {str(is_sidon(e)).lower()}", file=info)
    with _open_out(args.out) as fp:
        reports.write_set(fp, e)
    return 0


def cmd_transform(args: argparse.Namespace) -> int:
    with open(args.infile, "r", encoding="utf-8") as fp:
        f = reports.read_function(fp)
    op = fourier_inverse if args.inverse else fourier_forward
    result = op(f, kernel=args.kernel)
    with _open_out(args.out) as fp:
        reports.write_function(fp, result)
    return 0


def cmd_salem_profile(args: argparse.Namespace) -> int:
    errors: list[str] = []
    _validate_field_size(args.p, errors)
    grid = _parse_grid(args.p_grid)
    if any(pe < 1 for pe in grid):
        errors.append(f"p-grid values must be >= 1, got {args.p_grid}")
    params = _family_params(args, errors)
    if errors:
        raise ConfigError(errors)
    e = families.build_set(args.family, args.p, params,
                           max_points=args.max_points)
    prof = profile(surface_measure(e), grid, descriptor=e.descriptor,
                   kernel=args.kernel)
    config = {"command": "salem-profile", "family": args.family,
              "params": families.get(args.family).resolve_params(params),
              "p": args.p, "p_grid": args.p_grid, "kernel": args.kernel,
              "seed": args.seed}
    with _open_out(args.out) as fp:
        reports.write_csv(fp, reports.PROFILE_FIELDS,
                          reports.profile_rows(prof), config,
                          _timestamp(args))
    return 0


def cmd_salem_fit(args: argparse.Namespace) -> int:
    errors: list[str] = []
    sizes = _parse_sizes(args.field_sizes)
    for p in sizes:
        _validate_field_size(p, errors)
    if len(set(sizes)) < 4:
        errors.append(f">= 4 field sizes required, got {sorted(set(sizes))}")
    grid = _parse_grid(args.p_grid)
    params = _family_params(args, errors)
    if errors:
        raise ConfigError(errors)
    build = families.builder(args.family, params, max_points=args.max_points)
    pred = families.prediction(args.family, params)
    fits = []
    for p_exp in grid:
        predicted = pred.at(p_exp) if pred is not None else None
        fits.append(fit_salem_exponent(build, p_exp, sizes,
                                       predicted_s=predicted,
                                       kernel=args.kernel))
    config = {"command": "salem-fit", "family": args.family,
              "params": families.get(args.family).resolve_params(params),
              "p_grid": args.p_grid, "field_sizes": args.field_sizes,
              "kernel": args.kernel, "seed": args.seed}
    with _open_out(args.out) as fp:
        reports.write_csv(fp, reports.FIT_FIELDS, reports.fit_rows(fits),
                          config, _timestamp(args))
    return 0


def cmd_exponents(args: argparse.Namespace) -> int:
    errors: list[str] = []
    params = _family_params(args, errors)
    if errors:
        raise ConfigError(errors)
    try:
        report = families.threshold_report(args.family, params)
    except ValueError as exc:
        raise ConfigError([str(exc)])
    config = {"command": "exponents", "family": args.family,
              "params": families.get(args.family).resolve_params(params)}
    payload = reports.threshold_report_dict(report)
    with _open_out(args.out) as fp:
        reports.write_json_report(fp, payload, config, _timestamp(args))
    return 0


def cmd_ext_norm(args: argparse.Namespace) -> int:
    errors: list[str] = []
    _validate_field_size(args.p, errors)
    if not 2 <= args.q < math.inf:
        errors.append(f"q must lie in [2, inf), got {args.q}")
    params = _family_params(args, errors)
    if errors:
        raise ConfigError(errors)
    e = families.build_set(args.family, args.p, params,
                           max_points=args.max_points)
    est = extension_norm_lower_bound(surface_measure(e), args.q,
                                     _power_config(args))
    config = {"command": "ext-norm", "family": args.family,
              "params": families.get(args.family).resolve_params(params),
              "p": args.p, "q": args.q, "seed": args.seed,
              "starts": args.starts, "max_iter": args.max_iter,
              "tol": args.tol, "kernel": args.kernel}
    payload = {
        "q": reports.fmt_p_exp(est.q),
        "lower_bound": reports.f17(est.lower_bound),
        "witness_tag": est.witness_tag,
        "iterations": est.iterations,
        "converged": est.converged,
    }
    with _open_out(args.out) as fp:
        reports.write_json_report(fp, payload, config, _timestamp(args))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    errors: list[str] = []
    sizes = _parse_sizes(args.field_sizes)
    for p in sizes:
        _validate_field_size(p, errors)
    if len(set(sizes)) < 4:
        errors.append(f">= 4 field sizes required, got {sorted(set(sizes))}")
    if not 2 <= args.q < math.inf:
        errors.append(f"q must lie in [2, inf), got {args.q}")
    params = _family_params(args, errors)
    if errors:
        raise ConfigError(errors)
    build = families.builder(args.family, params, max_points=args.max_points)
    sweep = growth_sweep(build, args.q, sizes, _power_config(args))
    regime = families.regime_label(args.family, params, args.q)
    config = {"command": "sweep", "family": args.family,
              "params": families.get(args.family).resolve_params(params),
              "q": args.q, "field_sizes": args.field_sizes,
              "seed": args.seed, "starts": args.starts,
              "max_iter": args.max_iter, "tol": args.tol,
              "kernel": args.kernel,
              "fitted_growth_exponent":
                  reports.f17(sweep.fitted_growth_exponent),
              "regime": regime}
    rows = [dict(row, regime=regime) for row in reports.sweep_rows(sweep)]
    with _open_out(args.out) as fp:
        reports.write_csv(fp, reports.SWEEP_FIELDS + ("regime",), rows,
                          config, _timestamp(args))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    suites = args.suite or None
    try:
        results = verify.run_suites(suites)
    except ValueError as exc:
        raise ConfigError([str(exc)])
    if suites is None:
        results.append(verify.mutation_check())
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = f"  ({r.detail})" if r.detail else ""
        print(f"{status} {r.suite}: {r.name}{detail}")
        failures += 0 if r.passed else 1
    total = len(results)
    print(f"{total - failures}/{total} checks passed")
    return 0 if failures == 0 else 3


# ------------------------------------------------------------ entry point

def _add_family_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", required=True,
                     help=f"one of: {', '.join(families.names())}")
    sub.add_argument("--d", type=int, help="ambient dimension parameter")
    sub.add_argument("--j", type=int, help="hamming product value")
    sub.add_argument("--k", type=int, help="sphere dimension parameter")
    sub.add_argument("--m", type=int, help="product or slab parameter")
    sub.add_argument("--r", type=int, help="sphere radius")
    sub.add_argument("--n", type=int, help="cylinder slab dimension")
    sub.add_argument("--percent", type=int,
                     help="random family density in percent")


def _add_common_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", default="-", help="output path, '-' = stdout")
    sub.add_argument("--format", choices=("csv", "json"), default=None,
                     help="accepted for symmetry; commands pick their format")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--kernel", choices=("auto", "naive", "bluestein"),
                     default="auto")
    sub.add_argument("--max-points", type=int, default=DEFAULT_POINT_CAP,
                     help="cap on p^d per constructed space")
    sub.add_argument("--threads", type=int, default=None,
                     help="parallelism degree (default: FFR_THREADS or 1)")
    sub.add_argument("--timestamp", action="store_true",
                     help="stamp outputs with wall-clock time "
                          "(default: null for byte-stable output)")


def _add_power_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--starts", type=int, default=8,
                     help="random multistart count")
    sub.add_argument("--max-iter", type=int, default=500)
    sub.add_argument("--tol", type=float, default=1e-8)


def build_parser() -> _Parser:
    parser = _Parser(prog="ffr", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"ffrestrict {__version__}")
    parser.add_argument("--config", default=None,
                        help="key=value file supplying flag defaults")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("build-set", help="construct a family instance")
    _add_family_options(sub)
    sub.add_argument("--p", type=int, required=True, help="field size")
    sub.add_argument("--target-size", dest="target_size", type=int)
    _add_common_options(sub)
    sub.set_defaults(func=cmd_build_set)

    sub = subs.add_parser("transform", help="Fourier-transform a function file")
    sub.add_argument("--in", dest="infile", required=True)
    sub.add_argument("--inverse", action="store_true")
    _add_common_options(sub)
    sub.set_defaults(func=cmd_transform)

    sub = subs.add_parser("salem-profile",
                          help="norm profile at one field size")
    _add_family_options(sub)
    sub.add_argument("--p", type=int, required=True, help="field size")
    sub.add_argument("--p-grid", dest="p_grid", default="2,4,8,inf")
    _add_common_options(sub)
    sub.set_defaults(func=cmd_salem_profile)

    sub = subs.add_parser("salem-fit",
                          help="fit Salem exponents across field sizes")
    _add_family_options(sub)
    sub.add_argument("--p-grid", dest="p_grid", default="2,4,8,inf")
    sub.add_argument("--field-sizes", dest="field_sizes",
                     default="5,7,11,13,17,19,23")
    _add_common_options(sub)
    sub.set_defaults(func=cmd_salem_fit)

    sub = subs.add_parser("exponents",
                          help="exact q-range report for a family")
    _add_family_options(sub)
    _add_common_options(sub)
    sub.set_defaults(func=cmd_exponents)

    sub = subs.add_parser("ext-norm",
                          help="extension-norm lower bound at one (p, q)")
    _add_family_options(sub)
    sub.add_argument("--p", type=int, required=True, help="field size")
    sub.add_argument("--q", type=float, required=True)
    _add_power_options(sub)
    _add_common_options(sub)
    sub.set_defaults(func=cmd_ext_norm)

    sub = subs.add_parser("sweep",
                          help="lower-bound growth sweep across field sizes")
    _add_family_options(sub)
    sub.add_argument("--q", type=float, required=True)
    sub.add_argument("--field-sizes", dest="field_sizes",
                     default="5,7,11,13,17,19,23")
    _add_power_options(sub)
    _add_common_options(sub)
    sub.set_defaults(func=cmd_sweep)

    sub = subs.add_parser("verify", help="run the invariant suites")
    sub.add_argument("--suite", action="append",
                     help=f"restrict to a suite "
                          f"({', '.join(sorted(verify.SUITES))}); "
                          "repeatable; default runs all plus the "
                          "mutation check")
    sub.set_defaults(func=cmd_verify)
    return parser


def _load_config_tokens(path: str) -> list[str]:
    """key=value lines become CLI tokens inserted before the real flags,
    so explicit flags override the file."""
    tokens: list[str] = []
    try:
        with open(path, "r", encoding="utf-8") as fp:
            for line in fp:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(
                        [f"config line without '=': {line!r}"])
                key, value = (part.strip() for part in line.split("=", 1))
                flag = "--" + key.replace("_", "-")
                if value.lower() in ("true", "yes"):
                    tokens.append(flag)
                elif value.lower() in ("false", "no"):
                    continue
                else:
                    tokens.extend([flag, value])
    except OSError as exc:
        raise ConfigError([f"cannot read config file {path}: {exc}"])
    return tokens


def _merge_config(argv: list[str]) -> list[str]:
    path = None
    rest: list[str] = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok == "--config":
            if i + 1 >= len(argv):
                raise ConfigError(["--config needs a path"])
            path, skip = argv[i + 1], True
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
        else:
            rest.append(tok)
    if path is None:
        return argv
    if not rest:
        raise ConfigError(["--config given without a command"])
    command, tail = rest[0], rest[1:]
    return [command] + _load_config_tokens(path) + tail


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _merge_config(argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print("invalid config:", file=sys.stderr)
        for msg in exc.messages:
            print(f"  - {msg}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, OSError, RuntimeError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
