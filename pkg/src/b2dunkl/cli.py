"""Command-line entry point: moments, V, kernels and the verification suites."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import intertwine, moments, verify
from .dunkl import Kappa, parse_rational
from .errors import B2Error, PoleInDegreeFactor, SingularParameter, SingularSystem
from .poly import Polynomial

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3


class UsageError(Exception):
    pass


def _exact(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"kappa must be an exact rational like 5/2 here: {exc}") from None


def _decimal(text: str) -> float:
    if "/" in text:
        raise UsageError(f"quadrature takes decimal kappa values, got {text!r}")
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a decimal number: {text!r}") from None


def _alpha(text: str):
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"alpha must be four comma-separated integers, got {text!r}") from None
    if len(parts) != 4 or min(parts) < 0:
        raise UsageError(f"alpha must be four non-negative integers, got {text!r}")
    return parts


# ---------------------------------------------------------------------------


def cmd_moment(args) -> int:
    alpha = _alpha(args.alpha)
    k = _exact(args.kappa)
    if args.route == "single":
        print(moments.s_single(alpha, k))
    elif args.route == "double":
        print(moments.s_double(alpha, k))
    else:
        a, b = moments.s_single(alpha, k), moments.s_double(alpha, k)
        if a != b:
            print(f"{a} != {b} MISMATCH")
            return EXIT_FAIL
        print(f"{a} == {b} OK")
    return 0


def _read_poly(path: str) -> Polynomial:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    try:
        return Polynomial.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read polynomial from {path}: {exc}") from None


def cmd_apply_v(args) -> int:
    f = _read_poly(args.file)
    kappa = Kappa(_exact(args.kappa))
    if args.route == "oracle":
        out = intertwine.apply_V_oracle(f, kappa)
    else:
        out = intertwine.apply_V(f, kappa)
        if args.route == "both":
            other = intertwine.apply_V_oracle(f, kappa)
            if other != out:
                print(json.dumps({"formula": out.to_json(), "oracle": other.to_json()}))
                print("formula and oracle disagree", file=sys.stderr)
                return EXIT_FAIL
    print(out.to_json())
    return 0


def cmd_kernel(args) -> int:
    k = _exact(args.kappa)
    fn = intertwine.kernel_K0 if args.averaged else intertwine.kernel_K
    degrees = range(args.n + 1) if args.upto else [args.n]
    for n in degrees:
        print(json.dumps({"n": n, "kernel": json.loads(fn(n, k, args.route).to_json())}, separators=(",", ":")))
    return 0


def _suite_kwargs(name: str, args) -> dict:
    kw = {}
    exact_kappas = None
    if args.kappas is not None or args.kappa is not None:
        raw = args.kappas.split(",") if args.kappas is not None else [args.kappa]
        if name == "quad":
            kw["kappas"] = [_decimal(t) for t in raw]
        elif name in ("contiguity", "transforms", "singular"):
            raise UsageError(f"suite {name} draws its own parameters; --kappa does not apply")
        else:
            exact_kappas = [_exact(t) for t in raw]
            kw["kappas"] = exact_kappas
    if args.max_degree is not None:
        if name not in ("commute", "intertwine", "singular"):
            raise UsageError(f"--max-degree does not apply to suite {name}")
        kw["max_degree"] = args.max_degree
    if args.max_total is not None:
        if name not in ("moments", "symmetry", "quad"):
            raise UsageError(f"--max-total does not apply to suite {name}")
        kw["max_total"] = args.max_total
    if args.nodes is not None:
        if name != "quad":
            raise UsageError("--nodes only applies to the quad suite")
        kw["nodes"] = args.nodes
    if args.seed is not None:
        if name not in ("recurrence", "contiguity", "transforms", "singular"):
            raise UsageError(f"--seed does not apply to suite {name}")
        kw["seed"] = args.seed
    return kw


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    if args.suite == "all" and any(
        v is not None for v in (args.kappa, args.kappas, args.max_degree, args.max_total, args.nodes, args.seed)
    ):
        raise UsageError("bounds are per suite; run suites individually to change them")
    plans = [(name, _suite_kwargs(name, args)) for name in names]
    reports = []
    for name, kw in plans:
        rep = verify.run(name, **kw)
        print(f"{name}: {rep.cases} cases, {len(rep.failures)} failures, {rep.wall_time:.2f} s", file=sys.stderr)
        reports.append(rep)
    if args.csv:
        quad_kw = dict(plans)["quad"] if "quad" in dict(plans) else {}
        rows = verify.convergence_rows(**{k: v for k, v in quad_kw.items() if k == "kappas"})
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=["kappa", "alpha", "nodes", "value", "exact", "rel_err"])
            writer.writeheader()
            writer.writerows(rows)
    if len(reports) == 1:
        payload = reports[0].as_dict()
    else:
        payload = {
            "suite": "all",
            "cases": sum(r.cases for r in reports),
            "failures": sum(len(r.failures) for r in reports),
            "reports": [r.as_dict() for r in reports],
        }
    print(json.dumps(payload, indent=2))
    return 0 if all(r.ok for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="b2dunkl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment", help="exact moment s(alpha) of the measure")
    p.add_argument("--alpha", required=True, help="four comma-separated exponents, e.g. 2,0,0,0")
    p.add_argument("--kappa", required=True, help="exact rational, e.g. 5/2")
    p.add_argument("--route", choices=["single", "double", "both"], default="single")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("apply-v", help="apply V to a JSON polynomial in x1, x2")
    p.add_argument("file", help="path to the JSON polynomial, or - for stdin")
    p.add_argument("--kappa", required=True)
    p.add_argument("--route", choices=["formula", "oracle", "both"], default="formula")
    p.set_defaults(func=cmd_apply_v)

    p = sub.add_parser("kernel", help="degree-n part of the Dunkl kernel (or its B2 average)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa", required=True)
    p.add_argument("--route", choices=["formula", "oracle"], default="formula")
    p.add_argument("--averaged", action="store_true", help="average over the group (Bessel function)")
    p.add_argument("--upto", action="store_true", help="emit every degree 0..n, one JSON line each")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    p.add_argument("--suite", choices=[*verify.SUITES, "all"], default="all")
    p.add_argument("--kappa")
    p.add_argument("--kappas", help="comma-separated list")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--max-total", type=int)
    p.add_argument("--nodes", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--csv", help="write a quadrature convergence table here")
    p.set_defaults(func=cmd_verify)
    return parser


def _attach_negative_values(argv):
    # argparse reads "-1/4" as an option, so glue it to its flag as --kappa=-1/4
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--kappa", "--kappas"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (SingularParameter, PoleInDegreeFactor, SingularSystem) as exc:
        msg = str(exc)
        if intertwine.SINGULAR_SET not in msg:
            msg += f" (singular set: {intertwine.SINGULAR_SET})"
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_SINGULAR
    except B2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
