"""
weylstar command line - One subcommand per library operation.

Exit status: 0 on success, 1 on a library error, 2 on a parse or usage
error, 3 when a numeric series is undetermined or diverges.
"""

import argparse
import json
import sys
from typing import Optional, Sequence

from weylstar import ops
from weylstar.engine import open_engine
from weylstar.errors import ExpressionError, WeylStarError
from weylstar.expression import parse_expression
from weylstar.moyal import BracketKind
from weylstar.operators import (ElementaryOp, ExpEulerOp, LinOp, ScalingOp,
                                derivative, identity, linop_from_json)
from weylstar.poly import VarKind
from weylstar.trace import DEFAULT_POLICY
from weylstar.util import MultiIndex, parse_scalar

EXIT_ERROR = 1
EXIT_USAGE = 2


def _multi_index(text: str) -> MultiIndex:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError as error:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated exponents, got {text!r}") from error
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("exponents must be non-negative")
    return values


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-n", type=int, default=1,
                        help="degrees of freedom (default 1)")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="output", action="store_const",
                        const="json", help="print JSON")
    output.add_argument("--text", dest="output", action="store_const",
                        const="text", help="print text (default)")
    parser.add_argument("--verbose", action="store_true",
                        help="audit the operation on stderr")


def _operator_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("operator")
    group.add_argument("--op", choices=["E", "S", "expEuler", "id", "d"],
                       help="a built-in operator")
    group.add_argument("--lambda", dest="lam", default="1",
                       help="parameter of S and expEuler, e.g. 1/2 or i")
    group.add_argument("--in", dest="in_index", type=_multi_index,
                       help="E: the monomial sent, e.g. 1,0")
    group.add_argument("--out", dest="out_index", type=_multi_index,
                       help="E: its image")
    group.add_argument("--var", type=int, default=1,
                       help="d: differentiate in x<var>")
    group.add_argument("--from-json", dest="from_json", metavar="PATH",
                       help="read the operator from a JSON file")


def _policy_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tolerance", type=float,
                        help=f"batch tolerance (default {DEFAULT_POLICY.tol})")
    parser.add_argument("--max-terms", dest="max_terms", type=int,
                        help="batch limit (default "
                             f"{DEFAULT_POLICY.max_terms})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylstar",
        description="Exact computations in the Weyl algebra and with the "
                    "Moyal product.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _common(p)
        return p

    p = command("star", "Moyal product of two polynomials")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("-t", default="1", help="deformation parameter")
    p.add_argument("--max-degree", dest="max_degree", type=int)

    p = command("bracket", "one of the four brackets")
    p.add_argument("kind", choices=[k.value.replace("_", "-")
                                    for k in BracketKind])
    p.add_argument("f")
    p.add_argument("g")

    p = command("str", "supertrace F(0)")
    p.add_argument("f")

    for name, help_text in (("kappa", "Str(F*G)"),
                            ("bform", "(-1)^(fg+1) kappa(F, G)")):
        p = command(name, help_text)
        p.add_argument("f")
        p.add_argument("g")

    p = command("rho", "symmetrization into the normal-ordered Weyl algebra")
    p.add_argument("f")

    command("osp-roots", "root vectors of osp(1, 2n)")

    p = command("osp-check", "structure checks of osp(1, 2n) and W")
    p.add_argument("check", choices=sorted(ops.osp_checks.CHECKS))
    p.add_argument("-k", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--max-degree", dest="max_degree", type=int)
    p.add_argument("--l", dest="l", type=int)
    p.add_argument("--m", dest="m", type=int)
    p.add_argument("--kind", choices=[k.value.replace("_", "-")
                                      for k in BracketKind])

    p = command("ck-image", "rank of C_k on S^l x S^m")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("m", type=int)

    p = command("cg", "rank of the Moyal product on S^l x S^m, n = 1")
    p.add_argument("l", type=int)
    p.add_argument("m", type=int)

    p = command("reconstruct", "differential operator form of an operator")
    _operator_options(p)
    p.add_argument("--max-order", dest="max_order", type=int, default=4)
    p.add_argument("--normal-symbol", dest="normal_symbol",
                   action="store_true")

    p = command("wmap", "act with a Weyl algebra element on a polynomial")
    p.add_argument("symbol", help="element of W in p and q")
    p.add_argument("target", help="polynomial in x")

    for name, help_text in (("strwbar", "supertrace of the normal symbol"),
                            ("rstr", "renormalized supertrace")):
        p = command(name, help_text)
        _operator_options(p)
        _policy_options(p)
        p.add_argument("--numeric", action="store_true",
                       help="sum the series even if a closed form exists")

    p = command("iw", "formal inverse Weyl transform")
    _operator_options(p)
    _policy_options(p)
    p.add_argument("--max-degree", dest="max_degree", type=int, default=6)
    p.add_argument("--closed-form", dest="closed_form", action="store_true")

    return parser


def read_operator(args: argparse.Namespace) -> LinOp:
    """
    The operator selected by ``--op`` or ``--from-json``.
    """
    if args.from_json:
        with open(args.from_json, "r", encoding="utf-8") as f:
            return linop_from_json(json.load(f))

    n = args.n
    if args.op in ("S", "expEuler"):
        lam = parse_scalar(args.lam)
        return ScalingOp(lam, n) if args.op == "S" else ExpEulerOp(lam, n)
    if args.op == "E":
        out_index = args.out_index or (0,) * n
        in_index = args.in_index or (0,) * n
        return ElementaryOp(out_index, in_index)
    if args.op == "id":
        return identity(n)
    if args.op == "d":
        return derivative(args.var, n)
    raise ExpressionError("", None, "an operator is required: use --op or "
                                    "--from-json")


def make_operation(args: argparse.Namespace) -> ops.Operation:
    """
    Translate parsed arguments into the operation of the subcommand.
    """
    n = args.n

    def sym(text: str):
        return parse_expression(text, n, VarKind.SYMPLECTIC)

    name = args.command
    if name == "star":
        return ops.Star(f=sym(args.f), g=sym(args.g),
                        t=parse_scalar(args.t), max_degree=args.max_degree)
    if name == "bracket":
        return ops.Bracket(kind=args.kind, f=sym(args.f), g=sym(args.g))
    if name == "str":
        return ops.Str(f=sym(args.f))
    if name == "kappa":
        return ops.Kappa(f=sym(args.f), g=sym(args.g))
    if name == "bform":
        return ops.Bform(f=sym(args.f), g=sym(args.g))
    if name == "rho":
        return ops.Rho(f=sym(args.f))
    if name == "osp-roots":
        return ops.OspRoots(n=n)
    if name == "osp-check":
        return ops.OspCheck(check=args.check, n=n, k=args.k,
                            degree=args.degree, max_degree=args.max_degree,
                            l=args.l, m=args.m, kind=args.kind)
    if name == "ck-image":
        return ops.CkImage(k=args.k, l=args.l, m=args.m, n=n)
    if name == "cg":
        return ops.Cg(l=args.l, m=args.m)
    if name == "reconstruct":
        return ops.Reconstruct(op=read_operator(args),
                               max_order=args.max_order,
                               normal_symbol=args.normal_symbol)
    if name == "wmap":
        return ops.Wmap(symbol=sym(args.symbol),
                        target=parse_expression(args.target, n,
                                                VarKind.PLAIN))

    policy = DEFAULT_POLICY.with_overrides(tol=args.tolerance,
                                           max_terms=args.max_terms)
    if name == "strwbar":
        return ops.Strwbar(op=read_operator(args), numeric=args.numeric,
                           policy=policy)
    if name == "rstr":
        return ops.Rstr(op=read_operator(args), numeric=args.numeric,
                        policy=policy)
    if name == "iw":
        return ops.Iw(op=read_operator(args), max_degree=args.max_degree,
                      closed_form=args.closed_form, policy=policy)

    raise AssertionError(f"unhandled command {name}")


def render(op: ops.Operation, output: Optional[str]) -> str:
    if output == "json":
        return json.dumps(op.to_json(), indent=2, sort_keys=True)
    return op.to_text()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)

    try:
        op = make_operation(args)
        with open_engine(verbose=args.verbose) as engine:
            engine.run(op)
    except ExpressionError as error:
        print(f"weylstar: {error}", file=sys.stderr)
        return EXIT_USAGE
    except (WeylStarError, OSError, json.JSONDecodeError, KeyError,
            ValueError) as error:
        print(f"weylstar: {error}", file=sys.stderr)
        return EXIT_ERROR

    print(render(op, args.output))
    return op.exit_code()


if __name__ == "__main__":
    sys.exit(main())
