"""Command line: solve, build and verify extended Poincare algebras.

Exit codes: 0 success, 1 a mathematical check failed, 2 invalid input.
QUATPOINCARE_THREADS is accepted as a parallelism hint; the checks run
sequentially, so it never affects results.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .clifford import even_module, parse_blocks
from .document import algebra_to_dict, dumps, loads_algebra
from .epa import ALTERNATING, SYMMETRIC, EPA, normalize_pi, pi_from_coefficients, solve_equivariant
from .errors import DocumentError, JacobiViolation, QuatPoincareError
from .exactla import QMatrix, fmt_rational
from .verify import CHECKS, Verifier, report_text


class UsageError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("QUATPOINCARE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"QUATPOINCARE_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError("QUATPOINCARE_THREADS must be positive")
    return n


def _solver_basis(args):
    if args.p < 0 or args.q < 0 or args.p + args.q < 1:
        raise UsageError("need p, q >= 0 and p + q >= 1")
    W = even_module(args.p, args.q, parse_blocks(args.module))
    variant = SYMMETRIC if args.super else ALTERNATING
    basis = solve_equivariant(W, variant)
    if args.p >= 3:
        basis = [normalize_pi(W, P) for P in basis]
    return W, variant, basis


def _tensor(P, variant):
    m = P[0].shape[0] if P else 0
    out = []
    for s in range(m):
        for t in range(s if variant == SYMMETRIC else s + 1, m):
            for k, Pk in enumerate(P):
                v = Pk[s, t]
                if v:
                    out.append([s, t, k, fmt_rational(v)])
    return out


def cmd_solve(args) -> int:
    W, variant, basis = _solver_basis(args)
    print(f"dim = {len(basis)}")
    if not basis and variant == SYMMETRIC:
        print("no superextension exists for this module")
    for i, P in enumerate(basis):
        print(f"basis[{i}] = {json.dumps(_tensor(P, variant))}")
    return 0


def cmd_build(args) -> int:
    W, variant, basis = _solver_basis(args)
    try:
        coeffs = [Fraction(c) for c in args.pi.split(",")] if args.pi.strip() else []
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse coefficients {args.pi!r}")
    if len(coeffs) != len(basis):
        raise UsageError(f"expected {len(basis)} coefficients (solver basis dimension), got {len(coeffs)}")
    if basis:
        P = pi_from_coefficients(basis, coeffs)
    else:
        P = [QMatrix.zeros(W.dim, W.dim) for _ in range(W.n)]
    alg = EPA(W, P, variant)
    try:
        alg.verify()
    except JacobiViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = dumps(algebra_to_dict(alg, coeffs))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    _threads()
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc))
    alg = loads_algebra(text)
    names = CHECKS if not args.checks else [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; available: {', '.join(CHECKS)}")
    report = Verifier(alg).run(names)
    if args.format == "json":
        sys.stdout.write(dumps(report))
    else:
        sys.stdout.write(report_text(report))
    return 0 if report["ok"] else 1


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quatpoincare", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def algebra_args(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--module", required=True, help='e.g. "Sigma*2" or "S+*1,S-*1"')
        sp.add_argument("--super", action="store_true", help="symmetric Pi on an odd W")

    s = sub.add_parser("solve", help="basis of equivariant Pi")
    algebra_args(s)
    s.set_defaults(func=cmd_solve)
    b = sub.add_parser("build", help="build g(Pi) and write its document")
    algebra_args(b)
    b.add_argument("--pi", required=True, help="comma-separated coefficients on the solver basis")
    b.add_argument("--out", help="output file (default: stdout)")
    b.set_defaults(func=cmd_build)
    v = sub.add_parser("verify", help="run checks on an algebra document")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--checks", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DocumentError, QuatPoincareError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
