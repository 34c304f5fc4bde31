"""Command line front end.

    henselian lift FILE
    henselian solve FILE --y 5
    henselian invert FILE --y 250
    henselian implicit FILE --u 5
    henselian smooth FILE
    henselian sample FILE --m 3 --level 1 [--avoid X]

Exit codes: 0 ok, 2 parse error, 3 precondition violation, 4 precision
exhausted, 5 avoidance exhausted, 6 internal (non-convergence guard).
"""

from __future__ import annotations

import argparse
import sys

from .density import DensityRequest, density_sample
from .errors import HenselError, ParseError, PreconditionError
from .hensel import HenselProblem, hensel_lift, solve_for_target
from .local_maps import ImplicitSystem, implicit_eval, inverse_eval, make_chart
from .smoothness import Verdict, VarietySpec, smooth_check
from .systemfile import parse_polynomial, parse_system, parse_vector


def fmt_vector(vec):
    if len(vec) == 1:
        return str(vec[0])
    return "(" + ", ".join(str(x) for x in vec) + ")"


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_system(text)


def _square(spec):
    if spec.role is not None and spec.role.kind != "square":
        raise PreconditionError(f"this command needs a square system, file declares '{spec.role}'")
    f = spec.poly_map()
    if not f.is_square:
        raise PreconditionError(f"{f.coarity} polynomials in {f.arity} variables is not a square system")
    return f


def _dimension(spec):
    if spec.role is None or spec.role.kind == "square":
        raise PreconditionError("this command needs a 'variety dim=<k>' or 'implicit r=<k>' annotation")
    return spec.role.k


def _vector_arg(text, spec, n, what):
    vec = parse_vector(text, spec.ring)
    if len(vec) != n:
        raise PreconditionError(f"{what} needs {n} components, got {len(vec)}")
    return vec


def cmd_lift(spec, args):
    prob = HenselProblem(_square(spec), spec.base_point())
    res = hensel_lift(prob)
    return [f"root = {fmt_vector(res.root)} (iterations {res.iterations}, residual {res.residual_valuation})"]


def cmd_solve(spec, args):
    f = _square(spec)
    y = _vector_arg(args.y, spec, f.coarity, "--y")
    x = solve_for_target(HenselProblem(f), y)
    return [f"x = {fmt_vector(x)}"]


def _chart_note(chart):
    return f"e = {chart.ctx.format_scalar(chart.e)}, v(e) = {chart.e_valuation}, certified precision {chart.certified_precision}"


def cmd_invert(spec, args):
    f = _square(spec)
    y = _vector_arg(args.y, spec, f.coarity, "--y")
    chart = make_chart(f)
    x = inverse_eval(chart, y)
    return [f"x = {fmt_vector(x)} ({_chart_note(chart)})"]


def cmd_implicit(spec, args):
    if spec.role is None or spec.role.kind != "implicit":
        raise PreconditionError("this command needs an 'implicit r=<k>' annotation")
    r = spec.role.k
    p = spec.poly_map()
    base = spec.base_point()
    moved = spec.point is not None and any(c != 0 for c in base)
    if moved:
        p = p.translate(base)
    system = ImplicitSystem(p, r)
    u = _vector_arg(args.u, spec, r, "--u") if r else []
    ctx = spec.ring
    if moved:
        u = [ctx.element(a) - ctx.element(b) for a, b in zip(u, base[:r])]
    phi = implicit_eval(system, u)
    if moved:
        phi = [x + b for x, b in zip(phi, base[r:])]
    solved = ", ".join(spec.vars[r:])
    return [f"{solved} = {fmt_vector(phi)} ({_chart_note(system.chart)})"]


def cmd_smooth(spec, args):
    variety = VarietySpec(spec.poly_map(), _dimension(spec), spec.base_point())
    report = smooth_check(variety)
    rk, codim = report.jacobian_rank, report.codim
    if report.verdict is Verdict.NOT_SMOOTH:
        return [f"rank {rk}, NOT smooth at point (expected codim {codim})"]
    if report.verdict is Verdict.RANK_EXCEEDS_CODIM:
        return [f"rank {rk} exceeds expected codim {codim}: claimed dim={variety.claimed_dim} is inconsistent"]
    pv = report.pivot
    gens = ", ".join(spec.names[i] for i in pv.rows)
    cols = ", ".join(spec.vars[j] for j in pv.cols)
    return [
        f"rank {rk}, smooth at point (codim {codim})",
        f"pivot generators [{gens}] variables [{cols}], order ({', '.join(pv.var_order)})",
        f"e = {spec.ring.format_scalar(pv.minor_det)}, v(e) = {pv.valuation}",
    ]


def _table(header, rows):
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    fmt = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    return [fmt(header)] + [fmt(r) for r in rows]


def cmd_sample(spec, args):
    variety = VarietySpec(spec.poly_map(), _dimension(spec), spec.base_point())
    avoid = spec.avoid
    if args.avoid is not None:
        avoid = parse_polynomial(args.avoid, spec.ring, spec.vars)
    req = DensityRequest(variety, args.m, args.level, avoid, args.budget)
    report = density_sample(req)
    header = ["#", "point", "v(disp)", "v(" + ",".join(spec.names) + ")"]
    if avoid is not None:
        header.append(f"v({avoid})")
    rows = []
    for i, pt in enumerate(report.points, start=1):
        row = [str(i), fmt_vector(pt.coords), str(pt.displacement_valuation),
               ", ".join(str(v) for v in pt.generator_valuations)]
        if avoid is not None:
            row.append(str(pt.avoid_valuation))
        rows.append(row)
    e = spec.ring.format_scalar(report.e)
    intro = f"{len(report.points)} points at displacement valuation >= {args.level} (e = {e}, v(e) = {report.e_valuation})"
    return [intro] + _table(header, rows)


COMMANDS = {
    "lift": cmd_lift,
    "solve": cmd_solve,
    "invert": cmd_invert,
    "implicit": cmd_implicit,
    "smooth": cmd_smooth,
    "sample": cmd_sample,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="henselian", description="Hensel lifting and local charts over Z_p and F_p[[t]].")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("lift", help="unique root near the base point").add_argument("file")
    for name, flag, help in (("solve", "--y", "solve f(x) = y for x in m^n"),
                             ("invert", "--y", "scaled inverse for y in e^2 m^n"),
                             ("implicit", "--u", "implicit function phi(u)")):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file")
        sp.add_argument(flag, required=True, help="comma-separated vector")
    sub.add_parser("smooth", help="Jacobian criterion at the point").add_argument("file")
    sp = sub.add_parser("sample", help="nearby points of a smooth variety")
    sp.add_argument("file")
    sp.add_argument("--m", type=int, default=1, help="number of points")
    sp.add_argument("--level", type=int, default=1, help="minimal displacement valuation")
    sp.add_argument("--avoid", help="polynomial that must not vanish at the points")
    sp.add_argument("--budget", type=int, default=None, help="candidate budget (default 64*m)")
    return parser


def main(argv=None):
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    try:
        spec = _load(args.file)
        lines = COMMANDS[args.command](spec, args)
    except HenselError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PreconditionError.exit_code
    for line in lines:
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
