"""Command-line interface: ``gft-omega <command> ...``.

Exit codes: 0 success or member, 1 negative result (non-member, failed
check), 2 usage or input error, 3 partial result (pole hit during a scan).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, geometry, omega, roots, verify
from .errors import DomainError, GFTError, PoleEncountered, UnknownEquation
from .series import default_degree, load_series, partial_sum, save_series, to_json_dict

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_PARTIAL = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False, default=_jsonable)


def _jsonable(value):
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


# ---------------------------------------------------------------------------
# subcommands


def cmd_roots(args) -> int:
    names = list(roots.CATALOG) if args.all else [args.eq]
    rows = []
    for name in names:
        try:
            res = roots.named_radius(name)
        except UnknownEquation:
            return _fail(f"unknown equation {name!r}; choose from {', '.join(roots.CATALOG)}")
        eq = roots.CATALOG[name]
        rows.append({"name": name, **res.to_dict(), "bracket": list(eq.bracket)})
    if args.json:
        print(_dump(rows if args.all else rows[0]))
    else:
        for row in rows:
            lo, hi = row["bracket"]
            print(f"{row['name']}: root={row['root']:.12f} residual={row['residual']:.3e} "
                  f"bracket=[{lo}, {hi}]")
    return EXIT_OK


def _load(path):
    try:
        return load_series(path)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc


class _InputError(Exception):
    pass


def cmd_member(args) -> int:
    if not args.lam > 0:
        return _fail(f"lambda must be positive, got {args.lam}")
    f = _load(args.input)
    cert = omega.is_member(f, args.lam, args.tol)
    print(_dump(cert.to_dict()))
    return EXIT_OK if cert.member else EXIT_NEGATIVE


def cmd_radius(args) -> int:
    f = _load(args.input)
    cfg = geometry.ScanConfig(
        theta_samples=args.theta_samples,
        r_step=args.r_step,
        bisection_tol=args.bisection_tol,
        r_max=args.r_max,
    )
    if args.partial_sum is not None:
        if args.partial_sum < 2:
            return _fail("--partial-sum must be >= 2")
        f = partial_sum(f, args.partial_sum)
    try:
        res = geometry.radius_of_positivity(args.property, f, cfg)
    except PoleEncountered as exc:
        print(_dump({
            "kind": args.property,
            "radius": exc.last_good_radius,
            "method": "partial",
            "pole_r": exc.r,
            "pole_theta": exc.theta,
            "message": str(exc),
        }))
        return EXIT_PARTIAL
    print(_dump(res.to_dict()))
    return EXIT_OK


def _family(args):
    if args.name == "fmu":
        if args.mu is None:
            raise DomainError("--mu is required for fmu")
        return omega.family_f_mu(args.mu, args.degree or default_degree())
    lam = 0.5 if args.lam is None else args.lam
    if args.name == "eq16":
        return omega.cubic_example(lam, args.degree or 3)
    if args.k is None:
        raise DomainError("--k is required for extremal")
    return omega.extremal_k(args.k, lam, args.degree)


def cmd_family(args) -> int:
    f = _family(args)
    if args.out:
        try:
            save_series(f, args.out)
        except OSError as exc:
            return _fail(f"cannot write {args.out}: {exc}")
    else:
        print(json.dumps(to_json_dict(f)))
    return EXIT_OK


def cmd_figure1(args) -> int:
    if args.nmax < 2:
        return _fail("--nmax must be >= 2")
    rows = bounds.figure1_data(2, args.nmax)
    text = bounds.figure1_csv(rows) if args.format == "csv" else bounds.figure1_json(rows) + "\n"
    start = bounds.plateau_start(rows)
    summary = (f"plateau: radius changes by < 1e-4 from n = {start} on "
               f"(radius {dict(rows)[start]:.6f})" if start else "plateau: not reached")
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            return _fail(f"cannot write {args.out}: {exc}")
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = [verify.run_suite(name, args.seed, args.samples) for name in names]
    if args.json:
        payload = [r.to_dict() for r in reports]
        print(_dump({"seed": args.seed, "samples": args.samples, "suites": payload}))
    else:
        for rep in reports:
            for c in rep.checks:
                extra = "" if c.measured is None else f"  measured={_fmt(c.measured)}"
                print(f"[{'PASS' if c.passed else 'FAIL'}] {rep.name}: {c.label}{extra}")
            print(f"{rep.name}: {rep.n_passed} passed, {rep.n_failed} failed")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_NEGATIVE


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gft-omega",
        description="Radii, membership and bound checks for the classes Omega_lambda.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="solve the named radius equations")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--eq", metavar="NAME")
    g.add_argument("--all", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("member", help="test membership in Omega_lambda")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--tol", type=float, default=omega.DEFAULT_TOL)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("radius", help="radius of starlikeness, convexity or close-to-convexity")
    p.add_argument("--property", required=True, choices=[k.value for k in geometry.Kind])
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--partial-sum", type=int, metavar="N")
    defaults = geometry.ScanConfig()
    p.add_argument("--theta-samples", type=int, default=defaults.theta_samples)
    p.add_argument("--r-step", type=float, default=defaults.r_step)
    p.add_argument("--bisection-tol", type=float, default=defaults.bisection_tol)
    p.add_argument("--r-max", type=float, default=defaults.r_max)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("family", help="write coefficients of a named family member")
    p.add_argument("--name", required=True, choices=["fmu", "eq16", "extremal"])
    p.add_argument("--mu", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("figure1", help="worst-case radius where Re s_n' > 0, for n = 2..nmax")
    p.add_argument("--nmax", type=int, default=40)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("verify", help="run seeded verification suites")
    p.add_argument("--suite", default="all", choices=["all", *verify.SUITES])
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=verify.DEFAULT_SAMPLES,
                   help="random functions drawn per suite")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        return _fail("--samples must be positive")
    try:
        return args.func(args)
    except _InputError as exc:
        return _fail(str(exc))
    except (GFTError, ValueError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
