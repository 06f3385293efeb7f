"""Command-line entry point: ``lineartwist <command> ...``.

Every run writes one report to stderr (and as JSON with ``--report``); the
exit status is 0 iff every check of the run passed.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import shlex
import sys
import time

from . import characters, kernels, specfile, suite, twist, zeros
from .errors import LinearTwistError, SpecParseError
from .growth import lindelof_estimate
from .suite import Check, RunReport

THREADS_ENV = "LINEARTWIST_THREADS"
ASSUMPTION_NOTE = ("assumption: F(s, alpha) and the shifted series are not of the form "
                   "P(s) L(s, chi); this hypothesis is not tested")


def fmt(x) -> str:
    """Fixed 17-significant-digit formatting for CSV output."""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def parse_alpha(text: str) -> float:
    """A real number, a fraction ``p/q`` or ``1/sqrt(n)``."""
    text = text.strip()
    if text.startswith("1/sqrt(") and text.endswith(")"):
        return 1.0 / math.sqrt(float(text[7:-1]))
    if "/" in text:
        p, q = text.split("/", 1)
        return float(p) / float(q)
    return float(text)


def parse_range(text: str) -> tuple[float, float, int]:
    lo, hi, n = text.split(":")
    return float(lo), float(hi), int(n)


def parse_grid(text: str):
    try:
        a, b = text.split(",")
        return parse_range(a), parse_range(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected s0:s1:n,t0:t1:m, got {text!r}") from exc


def parse_rect(text: str) -> tuple[float, float, float, float]:
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected a:b:c:d, got {text!r}")
    return tuple(float(p) for p in parts)


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _write_csv(path, header, rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (int, float)) else v for v in row])
    if path in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w", newline="") as fh:
            fh.write(buf.getvalue())


# ---------------------------------------------------------------- commands

def cmd_characters(args, report: RunReport) -> None:
    rows = characters.character_table(args.modulus)
    header = ["modulus", "label", "order", "parity", "conductor", "primitive", "gauss_re", "gauss_im"]
    _write_csv(args.out, header, [[r[h] for h in header] for r in rows])
    report.add(Check("characters", True, 0.0, f"{len(rows)} characters mod {args.modulus}"))


def cmd_kernels(args, report: RunReport) -> None:
    s = args.s
    if args.kind == "loggamma":
        r = kernels.log_gamma(s)
    elif args.kind == "hurwitz":
        r = kernels.hurwitz_zeta(s, args.y if args.y else 1.0)
    else:
        r = kernels.lerch_zeta(s, args.x, args.y, path=args.path)
    print(f"value {fmt(r.value.real)} {fmt(r.value.imag)}")
    print(f"abs_error {fmt(r.abs_error)}")
    print(f"flags {','.join(sorted(r.flags)) or '-'}")
    report.add(Check("kernels-probe", math.isfinite(r.abs_error), r.abs_error))


def cmd_twist_eval(args, report: RunReport, F) -> None:
    if args.beta is not None:
        r = twist.f_star(F, args.s, args.beta)
    else:
        r = twist.linear_twist(F, args.s, args.alpha)
    print(f"value {fmt(r.value.real)} {fmt(r.value.imag)}")
    print(f"abs_error {fmt(r.abs_error)}")
    report.add(Check("twist-eval", math.isfinite(r.abs_error), r.abs_error))


def cmd_twist_check_fe(args, report: RunReport, F) -> None:
    (s0, s1, n), (t0, t1, m) = args.grid
    rows = []
    worst = 0.0
    for sigma in _linspace(s0, s1, n):
        for t in _linspace(t0, t1, m):
            s = complex(sigma, t)
            lhs = twist.linear_twist(F, 1 - s, args.alpha)
            rhs = twist.fe_rhs(F, s, args.alpha)
            res = abs(lhs.value - rhs.value)
            worst = max(worst, res)
            rows.append([sigma, t, lhs.value.real, lhs.value.imag, rhs.value.real, rhs.value.imag,
                         res, lhs.abs_error + rhs.abs_error])
    _write_csv(args.out, ["sigma", "t", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "bound"], rows)
    report.add(Check("fe-residual", worst <= args.tol, worst, f"{len(rows)} points"))


def cmd_twist_residue(args, report: RunReport, F) -> None:
    a = twist.residue_formula(F, args.alpha)
    b = twist.residue_numeric(F, args.alpha)
    d = abs(a - b)
    print(f"formula {fmt(a.real)} {fmt(a.imag)}")
    print(f"numeric {fmt(b.real)} {fmt(b.imag)}")
    print(f"difference {fmt(d)}")
    report.add(Check("residue", d <= suite.RESIDUE_TOL, d))


_ZERO_HEADER = ["kind", "center_re", "center_im", "zero_re", "zero_im", "radius", "winding", "residual"]


def _zero_rows(records):
    return [[r.kind if r.certified or r.kind != "trivial" else "trivial-uncertified",
             r.certificate.center.real, r.certificate.center.imag,
             r.position.real, r.position.imag, r.certificate.radius, r.certificate.winding,
             r.residual] for r in records]


def cmd_zeros_trivial(args, report: RunReport, F) -> None:
    frame = zeros.build_frame(F, args.alpha, sigma_floor=args.sigma_min)
    recs = zeros.trivial_zeros(F, args.alpha, args.sigma_min, frame=frame)
    _write_csv(args.out, _ZERO_HEADER, _zero_rows(recs))
    bad = [r for r in recs if not r.certified]
    worst = max((r.residual for r in recs), default=0.0)
    report.add(Check("trivial-zeros", not bad, worst,
                     f"{len(recs)} circles, sigma_bar={frame.sigma_bar:g}, {len(bad)} uncertified"))


def cmd_zeros_count(args, report: RunReport, F) -> None:
    n = zeros.count_zeros(F, args.alpha, args.T, a=args.a, b=args.b)
    pred = zeros.rvm_prediction(F, args.alpha, args.T)
    print(f"N {n}")
    print(f"prediction {fmt(pred)}")
    print(f"difference {fmt(n - pred)}")
    diff = abs(n - pred)
    report.add(Check("riemann-von-mangoldt", diff <= suite.RVM_C * math.log(args.T), diff))


def cmd_zeros_scan(args, report: RunReport, F) -> None:
    recs = zeros.zero_scan(F, args.alpha, args.rect, max_depth=args.max_depth)
    _write_csv(args.out, _ZERO_HEADER, _zero_rows(recs))
    print(ASSUMPTION_NOTE, file=sys.stderr)
    far = [r for r in recs if r.position.real > args.b - 0.5]
    if far:
        print(f"warning: {len(far)} zero(s) with sigma > b - 0.5 = {args.b - 0.5:g}; "
              "the counting strip edge may be too small", file=sys.stderr)
    bad = [r for r in recs if not r.certified]
    worst = max((r.residual for r in recs if r.certified), default=0.0)
    report.add(Check("zero-scan", not bad, worst, f"{len(recs) - len(bad)} certified, {len(bad)} unresolved"))


def cmd_growth(args, report: RunReport, F) -> None:
    fit = lindelof_estimate(F, args.alpha, args.sigma, args.tmax)
    print(f"mu_hat {fmt(fit.mu_hat)}")
    print(f"fit_residual {fmt(fit.fit_residual)}")
    print(f"mu_plus {fmt(fit.mu_plus)}")
    print(f"mu_minus {fmt(fit.mu_minus)}")
    report.add(Check("growth", math.isfinite(fit.mu_hat), fit.fit_residual))


def cmd_suite(args, report: RunReport, F) -> None:
    r = suite.run_suite(F, args.alpha, args.profile, seed=args.seed, command=report.command,
                        spec_hash=report.spec_hash)
    report.checks.extend(r.checks)


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=20240601, help="seed for random test points")
    common.add_argument("--out", default=None, help="output file (CSV); stdout when omitted")
    common.add_argument("--profile", choices=sorted(suite.PROFILES), default="quick")
    common.add_argument("--report", default=None, help="also write the run report as JSON")

    with_spec = argparse.ArgumentParser(add_help=False, parents=[common])
    with_spec.add_argument("--spec", required=True, help="function-spec file")
    with_spec.add_argument("--alpha", type=parse_alpha, default=1.0, help="twist, e.g. 0.4, 2/5, 1/sqrt(2)")

    p = argparse.ArgumentParser(prog="lineartwist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    ch = sub.add_parser("characters", help="Dirichlet characters").add_subparsers(dest="action", required=True)
    c = ch.add_parser("list", parents=[common], help="character table mod q")
    c.add_argument("--modulus", type=int, required=True)
    c.set_defaults(func=cmd_characters, needs_spec=False)

    kp = sub.add_parser("kernels").add_subparsers(dest="action", required=True)
    k = kp.add_parser("probe", parents=[common], help="single kernel evaluation")
    k.add_argument("--kind", choices=["lerch", "hurwitz", "loggamma"], default="lerch")
    k.add_argument("--s", type=parse_complex, required=True)
    k.add_argument("--x", type=float, default=0.0)
    k.add_argument("--y", type=float, default=0.0)
    k.add_argument("--path", choices=["em", "reflect"], default=None)
    k.set_defaults(func=cmd_kernels, needs_spec=False)

    tw = sub.add_parser("twist", help="linear twists").add_subparsers(dest="action", required=True)
    e = tw.add_parser("eval", parents=[with_spec])
    e.add_argument("--s", type=parse_complex, required=True)
    e.add_argument("--beta", type=float, default=None, help="evaluate the shifted series instead")
    e.set_defaults(func=cmd_twist_eval)
    f = tw.add_parser("check-fe", parents=[with_spec])
    f.add_argument("--grid", type=parse_grid, default=parse_grid("1.2:3:20,-20:20:20"))
    f.add_argument("--tol", type=float, default=suite.FE_TOL)
    f.set_defaults(func=cmd_twist_check_fe)
    r = tw.add_parser("residue", parents=[with_spec])
    r.set_defaults(func=cmd_twist_residue)

    zs = sub.add_parser("zeros", help="zeros of linear twists").add_subparsers(dest="action", required=True)
    z = zs.add_parser("trivial", parents=[with_spec])
    z.add_argument("--sigma-min", type=float, default=-40.0)
    z.set_defaults(func=cmd_zeros_trivial)
    z = zs.add_parser("count", parents=[with_spec])
    z.add_argument("--T", type=float, required=True)
    z.add_argument("--a", type=float, default=None, help="left edge is -a (default sigma_bar + 1)")
    z.add_argument("--b", type=float, default=3.0)
    z.set_defaults(func=cmd_zeros_count)
    z = zs.add_parser("scan", parents=[with_spec])
    z.add_argument("--rect", type=parse_rect, required=True, help="a:b:c:d for [a,b] x [c,d]")
    z.add_argument("--max-depth", type=int, default=12)
    z.add_argument("--b", type=float, default=3.0, help="counting strip edge used for the warning")
    z.set_defaults(func=cmd_zeros_scan)

    g = sub.add_parser("growth", parents=[with_spec], help="Lindelof exponent estimate")
    g.add_argument("--sigma", type=float, required=True)
    g.add_argument("--tmax", type=float, default=2.0 ** 13)
    g.set_defaults(func=cmd_growth)

    s = sub.add_parser("suite", parents=[with_spec], help="run the check suite")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    report = RunReport("lineartwist " + shlex.join(argv))
    threads = os.environ.get(THREADS_ENV)
    start = time.perf_counter()
    try:
        if getattr(args, "needs_spec", True):
            F = specfile.load(args.spec)
            report.spec_hash = specfile.spec_hash(F)
            args.func(args, report, F)
        else:
            args.func(args, report)
    except SpecParseError as exc:
        report.add(Check("spec", False, math.inf, f"SpecParseError: {exc}"))
    except LinearTwistError as exc:
        report.add(Check("build" if not report.spec_hash and getattr(args, "needs_spec", True) else args.command,
                         False, math.inf, f"{type(exc).__name__}: {exc}"))
    report.wall_time = time.perf_counter() - start
    text = report.to_text()
    if threads:
        text += f"\nthreads: {threads} (evaluation is single-threaded)"
    print(text, file=sys.stderr)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json() + "\n")
    return 0 if report.passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
