"""Command-line front end.

Exit codes: 0 when every check passes, 1 when at least one fails, 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from fractions import Fraction

from .core import format_rational
from .expr import ExpressionError, evaluate, format_element, make_context, parse_expression
from .generators import transfer_generators_gl, transfer_generators_spo
from .geometry import OrbitLabel, Partition, kp_lift, small_orbit
from .verify import (
    CATALOG,
    SUITES,
    TEMPLATES,
    UnknownIdentityError,
    calibrate_constants,
    run_identity,
    run_suite,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _add_pair_args(p):
    p.add_argument("--pair", choices=("gl", "spo"), required=True)
    p.add_argument("--n", type=int, help="size of gl_n (pair gl)")
    p.add_argument("--N", type=int, help="size of o_N (pair spo)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=_fraction, default=Fraction(0), help="character shift, unnormalized gl")
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--alpha", type=_fraction, default=Fraction(0), help="character value, normalized gl")


def _add_output_args(p):
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="capelli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity checks for a dual pair")
    _add_pair_args(v)
    _add_output_args(v)
    v.add_argument("--suite", choices=SUITES)
    v.add_argument("--identity", action="append", metavar="ID", help="run only these identities")
    v.add_argument("--seed", type=_seed, help="seed for randomized checks (default $CAPELLI_SEED or 0)")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--timings", action="store_true", help="include elapsed times in the report")

    nf = sub.add_parser("nf", help="print the normal form of an expression")
    nf.add_argument("--algebra", required=True, help="weyl:RxC, gl:n, o:N, gl-gl:n,k[,normalized], o-sp:N,k, poly")
    nf.add_argument("--expr", required=True)
    _add_output_args(nf)

    g = sub.add_parser("generators", help="print the transfer generator set")
    _add_pair_args(g)
    _add_output_args(g)
    g.add_argument("--trust-calibration", action="store_true",
                   help="use solver constants instead of the stated ones")

    c = sub.add_parser("calibrate", help="solve a template for its scalar constants")
    c.add_argument("--template", choices=TEMPLATES, required=True)
    c.add_argument("--params", required=True, help="comma list like n=3,k=1,t=0")
    _add_output_args(c)

    o = sub.add_parser("orbits", help="small orbits and lifting")
    o.add_argument("--pair", choices=("gl", "spo"), required=True)
    o.add_argument("--n", type=int)
    o.add_argument("--N", type=int)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--lift", action="store_true", help="lift the zero orbit of the small member")
    _add_output_args(o)
    return parser


def _big(args) -> int:
    big = args.n if args.pair == "gl" else args.N
    flag = "--n" if args.pair == "gl" else "--N"
    if big is None:
        raise UsageError(f"{flag} is required for --pair {args.pair}")
    if big < 1 or args.k < 1:
        raise UsageError("sizes must be positive")
    return big


def _pair_params(args) -> dict:
    big = _big(args)
    if args.pair == "spo":
        if big < 2:
            raise UsageError("--N must be at least 2")
        return {"N": big, "k": args.k}
    params = {"n": big, "k": args.k}
    if args.normalized:
        params.update(normalized=True, alpha=args.alpha)
    else:
        params["t"] = args.t
    return params


def _emit(args, text_lines, payload):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in text_lines))


def _json_params(params: dict) -> dict:
    return {k: format_rational(v) if isinstance(v, Fraction) else v for k, v in params.items()}


# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    params = _pair_params(args)
    seed = args.seed
    if seed is None:
        env = os.environ.get("CAPELLI_SEED")
        try:
            seed = _seed(env) if env else 0
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"CAPELLI_SEED: {exc}") from None
    params.update(seed=seed, trials=args.trials)
    suite = args.suite or ("gl-all" if args.pair == "gl" else "spo-all")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    grid = [dict(params, pair=args.pair)]
    if args.identity:
        for ident in args.identity:
            if ident not in CATALOG:
                raise UsageError(f"unknown identity {ident!r}")
            if not ident.startswith(args.pair + "."):
                raise UsageError(f"identity {ident!r} does not belong to pair {args.pair}")
        reports = [run_identity(ident, params) for ident in args.identity]
        passed = sum(r.passed for r in reports)
        summary = {"pass": passed, "fail": len(reports) - passed}
        suite = "custom"
    else:
        reports, summary = run_suite(suite, grid, jobs=args.jobs)

    rows = []
    lines = []
    for r in reports:
        elapsed = round(r.elapsed_ms, 3) if args.timings else None
        rows.append({
            "identityId": r.identity_id,
            "parameters": r.parameters,
            "convention": r.convention,
            "status": r.status,
            "witness": r.witness,
            "elapsedMs": elapsed,
            "checks": r.checks,
            "failedCheck": r.failed_check,
            "detail": r.detail,
        })
        line = f"{r.status.upper():4}  {r.identity_id:28} checks={r.checks}"
        if elapsed is not None:
            line += f"  {elapsed:.1f} ms"
        if not r.passed:
            line += f"  at {r.failed_check}: {r.witness}"
        lines.append(line)
    lines.append(f"summary: {summary['pass']} pass, {summary['fail']} fail")
    payload = {"suite": suite, "parameters": _json_params(params), "reports": rows, "summary": summary}
    _emit(args, lines, payload)
    return EXIT_OK if summary["fail"] == 0 else EXIT_FAIL


def cmd_nf(args) -> int:
    try:
        context = make_context(args.algebra)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = evaluate(parse_expression(args.expr), context, args.expr)
    text = format_element(value)
    _emit(args, [text], {"algebra": context.name, "input": args.expr, "normalForm": text})
    return EXIT_OK


def cmd_generators(args) -> int:
    params = _pair_params(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.pair == "gl":
            gens = transfer_generators_gl(
                params["n"], params["k"], params.get("t", 0),
                normalized=args.normalized, alpha=params.get("alpha", 0),
                trust_calibration=args.trust_calibration,
            )
        else:
            gens = transfer_generators_spo(params["N"], params["k"])
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    poly = " + ".join(
        f"{format_rational(c)}*u^{d}" for d, c in reversed(list(enumerate(gens.polynomial))) if c
    )
    lines = [f"{gens.label} {gens.parameters}", f"p(u) coefficients (low to high): "
             + ", ".join(format_rational(c) for c in gens.polynomial)]
    lines += [f"note: {n}" for n in gens.notes]
    lines += [f"{name} = {format_element(e)}" for name, e in gens]
    payload = {
        "label": gens.label,
        "parameters": gens.parameters,
        "polynomial": [format_rational(c) for c in gens.polynomial],
        "polynomialText": poly,
        "stableRange": gens.stable_range,
        "notes": gens.notes,
        "generators": [{"name": name, "element": format_element(e)} for name, e in gens],
    }
    _emit(args, lines, payload)
    return EXIT_OK


def _parse_params(text: str) -> dict:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"parameter {item!r} is not key=value")
        try:
            out[key.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"parameter {key!r} is not a rational number") from None
    for key in ("n", "N", "k"):
        if key in out:
            if out[key].denominator != 1:
                raise UsageError(f"parameter {key} must be an integer")
            out[key] = int(out[key])
    return out


def cmd_calibrate(args) -> int:
    params = _parse_params(args.params)
    try:
        result = calibrate_constants(args.template, params)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    lines = [f"template {result.template_id} {result.parameters}"]
    for name in sorted(result.stated_constants):
        solved = result.solved_constants.get(name)
        lines.append(
            f"  {name}: solved {format_rational(solved) if solved is not None else '-'}"
            f"  stated {format_rational(result.stated_constants[name])}"
        )
    lines.append(f"match={str(result.match).lower()} residual_zero={str(result.residual_zero).lower()}"
                 f" unique={str(result.unique).lower()}")
    if result.message:
        lines.append(result.message)
    _emit(args, lines, result.to_dict())
    return EXIT_OK if result.succeeded else EXIT_FAIL


def _orbit_dict(label: OrbitLabel) -> dict:
    return {
        "type": label.partition.kind,
        "partition": list(label.partition.parts),
        "rank": label.rank,
        "small": label.small,
    }


def cmd_orbits(args) -> int:
    big = _big(args)
    k = args.k
    large_kind = "gl" if args.pair == "gl" else "o"
    small_kind = "gl" if args.pair == "gl" else "sp"
    small_size = k if args.pair == "gl" else 2 * k
    try:
        chain = [small_orbit(large_kind, big, r) for r in range(1, big // 2 + 1)
                 if large_kind == "gl" or r % 2 == 0]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"small orbits of {large_kind}_{big} (closure chain by rank):"]
    lines += [f"  rank {o.rank}: {o.partition}" for o in chain]
    payload = {"pair": args.pair, "large": f"{large_kind}_{big}", "small": f"{small_kind}_{small_size}",
               "smallOrbits": [_orbit_dict(o) for o in chain]}
    if args.lift:
        zero = Partition.zero(small_size, small_kind)
        try:
            lifted = kp_lift(zero, big)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        label = OrbitLabel.of(lifted)
        lines.append(f"lift of zero orbit of {small_kind}_{small_size} {zero}: {label}")
        payload["lift"] = {"source": list(zero.parts), "target": _orbit_dict(label)}
    _emit(args, lines, payload)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "nf": cmd_nf,
    "generators": cmd_generators,
    "calibrate": cmd_calibrate,
    "orbits": cmd_orbits,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except ExpressionError as exc:
        print(f"capelli: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, UnknownIdentityError) as exc:
        print(f"capelli: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"capelli: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
