"""Command-line front end.

Exit codes: 0 success, 1 verification failure or non-convergence,
2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from . import bounds, geometry, verify
from .errors import DomainError, PizzaError
from .fourier import (CoefficientKey, TruncationPolicy, coefficient_closed_form,
                      g_series)
from .geometry import PizzaConfig

SWEEP_HEADER = ["alpha", "a", "n", "g_series", "g_direct", "trunc_bound", "abs_diff", "bound_g"]


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """17 significant digits; round-trips through float()."""
    return format(x, ".17g")


def _sign(s: int) -> str:
    return f"{s:+d}" if s else "0"


def _angle(value, args):
    return math.radians(value) if args.degrees else value


def _policy(args):
    return TruncationPolicy(target_abs_error=args.tol)


def cmd_coeff(args, out):
    if args.m is None:
        raise UsageError("coeff needs --m")
    key_n = args.n
    CoefficientKey(args.m, 1, key_n)  # validates m (and m/n odd when --n is given)
    out.write(f"# c_2j(m) for m={args.m}: value = multiplier * pi\n")
    out.write("j\tmultiplier\tvalue\tsign\tleading\n")
    for j in range(1, args.j_max + 1):
        c = coefficient_closed_form(CoefficientKey(args.m, j, key_n))
        out.write(f"{j}\t{c.multiplier}\t{fmt(c.value)}\t{_sign(c.sign)}\t{'*' if c.is_leading else ''}\n")


def cmd_inequity(args, out):
    cfg = PizzaConfig(_angle(args.alpha, args), args.a, args.n)
    methods = ["series", *geometry.METHODS] if args.method == "all" else [args.method]
    values, lines = {}, []
    for method in methods:
        if method == "series":
            res = g_series(cfg, _policy(args))
            values[method] = res.value
            lines.append(f"series\t{fmt(res.value)}\ttruncation_bound={fmt(res.truncation_bound)}")
        else:
            values[method] = geometry.inequity_direct(cfg, method)
            lines.append(f"{method}\t{fmt(values[method])}")
    out.write(f"alpha={fmt(cfg.alpha)} a={fmt(cfg.a)} n={cfg.n}\n")
    out.write("".join(line + "\n" for line in lines))
    if len(methods) > 1:
        for i, p in enumerate(methods):
            for q in methods[i + 1:]:
                out.write(f"delta {p}-{q}\t{fmt(values[p] - values[q])}\n")


def cmd_extremum(args, out):
    rep = bounds.extremum(args.a, args.n, _policy(args))
    ok = bounds.below_bound(rep.m_a, rep.bound_m)
    out.write(f"a={fmt(args.a)} n={args.n}\n")
    out.write(f"M_a\t{fmt(rep.m_a)}\n")
    out.write(f"truncation_bound\t{fmt(rep.truncation_bound)}\n")
    out.write(f"argmax_alpha\t{fmt(rep.argmax_alpha)}\n")
    out.write(f"sign_at_argmax\t{_sign(rep.sign_at_argmax)}\n")
    out.write(f"f_at_argmax\t{fmt(rep.f_at_argmax)}\n")
    out.write(f"bound_M_a\t{fmt(rep.bound_m)}\n")
    out.write(f"bound_g\t{fmt(rep.bound_g)}\n")
    out.write(f"M_a < bound\t{'PASS' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def sweep_rows(param, start, stop, steps, alpha, a, n, policy, method=geometry.CLOSED_FORM):
    if steps < 2:
        raise UsageError("--steps must be at least 2")
    if not start < stop:
        raise UsageError("sweep start must be below stop")
    if param == "a" and not (0.0 < start and stop < 1.0):
        raise UsageError("offset sweep must stay inside (0, 1)")
    for x in np.linspace(start, stop, steps):
        x = float(x)
        try:
            cfg = PizzaConfig(x, a, n) if param == "alpha" else PizzaConfig(alpha, x, n)
            g = g_series(cfg, policy)
            direct = geometry.inequity_direct(cfg, method)
            bg = bounds.bound_g(cfg.a, cfg.n)
        except PizzaError as exc:
            raise type(exc)(f"sweep row {param}={fmt(x)}: {exc}") from exc
        yield [fmt(cfg.alpha), fmt(cfg.a), str(cfg.n), fmt(g.value), fmt(direct),
               fmt(g.truncation_bound), fmt(abs(g.value - direct)), fmt(bg)]


def cmd_sweep(args, out):
    if args.out is None:
        raise UsageError("sweep needs --out")
    start, stop = args.start, args.stop
    alpha = args.alpha
    if args.param == "alpha":
        start, stop = _angle(start, args), _angle(stop, args)
        if not (0.0 <= start and stop <= 2 * math.pi):
            raise UsageError("alpha sweep must stay within [0, 2*pi]")
    else:
        alpha = _angle(alpha, args)
    method = geometry.CLOSED_FORM if args.method in (None, "all", "series") else args.method
    if args.param == "alpha":
        PizzaConfig(0.0, args.a, args.n)
    rows = list(sweep_rows(args.param, start, stop, args.steps, alpha, args.a, args.n,
                           _policy(args), method))
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        writer.writerows(rows)
    out.write(f"wrote {len(rows)} rows to {args.out}\n")


def cmd_verify(args, out):
    results = verify.run(args.level, report=lambda line: out.write(line + "\n"))
    failed = [r for r in results if not r.passed]
    if failed:
        out.write(f"FAILED: {failed[0].name}: {failed[0].failures[0]}\n")
        return 1
    out.write("all suites passed\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pizza-inequity", allow_abbrev=False,
        description="Even-minus-odd slice area of an off-centre 2n-slice pizza.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, alpha=True, offset=True, n=True):
        if alpha:
            p.add_argument("--alpha", type=float, default=0.0, help="first ray angle (radians)")
        if offset:
            p.add_argument("--a", type=float, required=True, help="offset of the cut point, 0 < a < 1")
        if n:
            p.add_argument("--n", type=int, required=True, help="half the number of slices")
        p.add_argument("--tol", type=float, default=1e-12, help="series truncation target")
        p.add_argument("--degrees", action="store_true", help="read angles in degrees")

    p = sub.add_parser("coeff", allow_abbrev=False, help="closed-form c_2j(m) table")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="optional; check m is an odd multiple of n")
    p.add_argument("--j-max", type=int, default=10)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("inequity", allow_abbrev=False, help="g(alpha, a, n) by one or all methods")
    common(p)
    p.add_argument("--method", choices=["series", "quadrature", "closed_form", "all"], default="all")
    p.set_defaults(func=cmd_inequity)

    for name in ("extremum", "bound"):
        p = sub.add_parser(name, allow_abbrev=False, help="M_a, its location and the bounds")
        common(p, alpha=False)
        p.set_defaults(func=cmd_extremum)

    p = sub.add_parser("sweep", allow_abbrev=False, help="CSV sweep over alpha or a")
    common(p, offset=False)
    p.add_argument("--a", type=float, default=0.5, help="offset (ignored when sweeping a)")
    p.add_argument("--param", choices=["alpha", "a"], default="alpha")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("--method", choices=["quadrature", "closed_form"], default="closed_form",
                   help="direct-geometry oracle for the g_direct column")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", allow_abbrev=False, help="run the cross-check suites")
    p.add_argument("--level", choices=sorted(verify.LEVELS), default="quick")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out) or 0
    except (UsageError, DomainError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except PizzaError as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
