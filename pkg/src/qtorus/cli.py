"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails or errors,
2 for bad arguments or unparsable polynomials.
"""

from __future__ import annotations

import argparse
import json
import sys

from .report import Report, run_check
from .rings.text import PolySyntaxError, format_poly, parse_expr

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _order(kind):
    from .groebner import GREVLEX, LEX
    return {"lex": LEX, "grevlex": GREVLEX}[kind]


def _names():
    from .pipeline.paper_checks import named_polynomials
    return named_polynomials()


def _parse(text, names=None):
    try:
        return parse_expr(text, names)
    except PolySyntaxError:
        raise
    except (ValueError, ArithmeticError, KeyError) as exc:
        raise PolySyntaxError(f"cannot read {text!r}: {exc}") from None


def _read_lines(path):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.split("#", 1)[0].strip() for ln in fh]
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return [ln for ln in lines if ln]


def _range(text):
    try:
        lo, hi = text.replace("..", ":").split(":")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"--range expects LO..HI, got {text!r}") from None


# -- subcommands ------------------------------------------------------------------

def cmd_jones(args, report):
    from .jones import colored_jones_fig8
    if args.knot != "fig8":
        raise UsageError(f"unknown knot {args.knot!r}; only fig8 is built in")
    J = colored_jones_fig8()
    if args.range:
        report.output["values"] = {str(n): format_poly(J(n)) for n in _range(args.range)}
    else:
        report.output["value"] = format_poly(J(args.n))


def _basis_inputs(args, names):
    if args.poly_file:
        return [_parse(ln, names) for ln in _read_lines(args.poly_file)]
    return [_parse(s, names) for s in args.basis_from.split(",")]


def cmd_groebner(args, report):
    from .groebner import buchberger_extended
    from .rings.laurent import normalize_to_poly
    names = _names()
    polys = [normalize_to_poly(p)[0] for p in _basis_inputs(args, names)]
    eb = buchberger_extended(polys, _order(args.order))
    report.output["gens"] = [format_poly(g) for g in eb.gens]
    report.output["conversion"] = [[format_poly(c) for c in row] for row in eb.conversion]
    report.add(run_check("conversion . input = gens", eb.check_conversion))
    report.add(run_check("every S-polynomial reduces to 0", eb.check_criterion))


def cmd_reduce(args, report):
    from .groebner import buchberger_extended, reduce_poly
    from .rings.laurent import MultiLaurent, normalize_to_poly
    names = _names()
    if args.poly_file:
        lines = _read_lines(args.poly_file)
        if not lines:
            raise UsageError(f"{args.poly_file} holds no polynomial")
        target = _parse(lines[0], names)
    elif args.target:
        target = _parse(args.target, names)
    else:
        raise UsageError("reduce needs --target or --poly-file")
    order = _order(args.order)
    inputs = [normalize_to_poly(_parse(s, names))[0] for s in args.basis_from.split(",")]
    eb = buchberger_extended(inputs, order)
    f, m = normalize_to_poly(target)
    qs, r = reduce_poly(f, eb.gens, order)
    report.output["remainder"] = format_poly(r)
    if m != 1:
        report.output["multiplier"] = format_poly(m)
    report.output["quotients"] = [format_poly(q) for q in qs]

    def reconstruction():
        total = r
        for q, g in zip(qs, eb.gens):
            total = total + q * g
        return total == f, total - f if isinstance(total, MultiLaurent) else None

    report.add(run_check("target = sum q_i g_i + remainder", reconstruction))


def cmd_derive(args, report):
    from .pipeline.steps import compare_with_paper, run_pipeline, verify_conditions
    state = run_pipeline(args.choice, _order(args.order))
    P = state["P"]
    report.output["P"] = [f"L^{k}: {c}" for k, c in P.pairs()]
    report.extend(verify_conditions(P, range(1, args.nmax + 1)))
    if args.compare_paper:
        for key, same in compare_with_paper(state).items():
            report.add(run_check(f"derived {key} equals the printed one", lambda same=same: same))
    if args.dump:
        try:
            with open(args.dump, "w", encoding="utf-8") as fh:
                json.dump(state.to_dict(), fh, indent=2, ensure_ascii=False)
                fh.write("\n")
        except OSError as exc:
            raise UsageError(f"cannot write {args.dump}: {exc.strerror}") from None


def cmd_verify_paper(args, report):
    from .pipeline.paper_checks import paper_checks
    report.extend(paper_checks(args.nmax, _order(args.order)))


def cmd_verify(args, report):
    from .brackets import check_annihilation
    from .pipeline.constants import P_paper, alpha_E
    from .torus import TorusElement
    builtin = {"P": P_paper, "alpha": alpha_E}
    if args.operator in builtin:
        P = builtin[args.operator]()
    else:
        lines = _read_lines(args.operator)
        if not lines:
            raise UsageError(f"{args.operator} holds no operator")
        P = TorusElement.from_laurent(_parse(" ".join(lines), _names()))
    report.output["operator"] = str(P)
    rep = check_annihilation(P, range(1, args.nmax + 1))
    report.output["inhomogeneity"] = str(rep.inhomogeneity)
    report.add(run_check("cx = 0 identically", lambda: (rep.cx_zero, rep.vector.cx)))
    report.add(run_check("c1 = 0 identically", lambda: (rep.c1_zero, rep.vector.c1)))
    report.add(run_check(f"P J_E(n) = s_P(t, t^2n) for n = 1..{args.nmax}",
                         lambda: (rep.pointwise.passed, rep.pointwise.witness)))


# -- argument parsing ---------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--timings", action="store_true", help="include per-check elapsed time")
    common.add_argument("--order", choices=("lex", "grevlex"), default="lex", help="monomial order (t > M)")
    common.add_argument("--nmax", type=int, default=20, help="largest color n for pointwise checks")

    parser = argparse.ArgumentParser(prog="qtorus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jones", parents=[common], help="colored Jones values")
    p.add_argument("--knot", default="fig8")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--range", help="LO..HI (or LO:HI), inclusive")
    p.set_defaults(run=cmd_jones)

    p = sub.add_parser("groebner", parents=[common], help="Groebner basis with conversion matrix")
    p.add_argument("--basis-from", default="A2,B2", help="comma-separated names or expressions")
    p.add_argument("--poly-file", help="one polynomial per line")
    p.set_defaults(run=cmd_groebner)

    p = sub.add_parser("reduce", parents=[common], help="normal form modulo a computed basis")
    p.add_argument("--target", help="name or expression")
    p.add_argument("--basis-from", default="A2,B2")
    p.add_argument("--poly-file", help="file whose first polynomial is the target")
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("derive", parents=[common], help="run the derivation of P")
    p.add_argument("--dump", help="write every intermediate as JSON")
    p.add_argument("--compare-paper", action="store_true")
    p.add_argument("--choice", choices=("paper", "derived"), default="derived",
                   help="particular solution and k: printed or computed")
    p.set_defaults(run=cmd_derive)

    p = sub.add_parser("verify-paper", parents=[common], help="check every printed value")
    p.set_defaults(run=cmd_verify_paper)

    p = sub.add_parser("verify", parents=[common], help="annihilation check for an operator")
    p.add_argument("--operator", required=True, help="file with a polynomial in t, M, L, or P / alpha")
    p.set_defaults(run=cmd_verify)
    return parser


def run_command(argv):
    """Run one invocation; returns ``(exit code, Report or None, text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None, ""
    if args.nmax < 1:
        return EXIT_USAGE, None, "qtorus: --nmax must be positive"
    report = Report(list(argv))
    try:
        args.run(args, report)
    except (UsageError, PolySyntaxError) as exc:
        return EXIT_USAGE, None, f"qtorus: {exc}"
    text = report.to_json(args.timings) if args.json else report.to_text(args.timings)
    return (EXIT_OK if report.passed else EXIT_FAIL), report, text


def main(argv=None):
    code, _, text = run_command(sys.argv[1:] if argv is None else argv)
    if text:
        stream = sys.stderr if code == EXIT_USAGE else sys.stdout
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
