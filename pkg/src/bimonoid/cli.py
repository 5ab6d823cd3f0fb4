"""Command-line front end.

Exit codes: 0 success (or "true"), 1 "false", 2 usage or input error,
3 a resource cap was hit.
"""
from __future__ import annotations

import argparse
import sys

from . import canon, mx, poly
from .config import load_settings
from .equivalence import Theory, equivalent, evaluate
from .errors import BimonoidError, BudgetExceeded
from .models import get_model
from .rewriting import normal_form, rules_R, rules_R_id
from .terms import FULL_PARENS, PRETTY, parse, render, simplify

PROG = "bimonoid"
EXPENSIVE_SIZE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--full-parens", action="store_true",
                        help="fully parenthesised output")
    common.add_argument("--bf_step_budget", metavar="N", help="rewrite step cap")
    common.add_argument("--bf_max_term_size", metavar="N", help="term size cap")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog=PROG, parents=[common],
                     description="Terms, polynomials and rewriting for free strong bimonoids.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def command(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    p = command("canon", "AC-canonical form of a simple term")
    p.add_argument("term")
    p = command("simplify", "remove 0 and unit factors")
    p.add_argument("term")
    p = command("eqv", "decide equivalence of two terms")
    p.add_argument("--theory", default="sb", choices=["sb", "rd", "idrd", "ac", "acplus", "acid"])
    p.add_argument("term1")
    p.add_argument("term2")
    p = command("nf", "rewrite to normal form")
    p.add_argument("--trs", default="r", choices=["r", "rid"])
    p.add_argument("--strategy", default="innermost",
                   help="left-first, right-first, innermost, random:<seed>")
    p.add_argument("--stats", action="store_true", help="print step counts")
    p.add_argument("--trace", action="store_true", help="print every step")
    p.add_argument("term")
    for name, what in (("mul", "product"), ("add", "sum")):
        p = command(name, f"{what} of two polynomial classes")
        p.add_argument("--id", action="store_true", help="use the idempotent operations")
        p.add_argument("term1")
        p.add_argument("term2")
    p = command("eval", "evaluate a term in a built-in model")
    p.add_argument("--model", required=True, choices=["bool", "plusmin", "plusplus", "words"])
    p.add_argument("--assign", default="", help="x=value,y=value,...")
    p.add_argument("term")
    p = command("large", "is an id-reduced polynomial large?")
    p.add_argument("term")
    p = command("witness", "the n-th non-large witness polynomial")
    p.add_argument("n", type=int)
    p = command("wcl", "weak closure of classes in the quotient")
    p.add_argument("terms", help="comma-separated id-reduced polynomials")
    p.add_argument("--max-iter", type=int, default=mx.DEFAULT_MAX_ITER)
    p = command("dot", "labelled tree of a simple term, in DOT")
    p.add_argument("term")
    return parser


# ---------------------------------------------------------------- handlers

def _parse_assignment(text: str, model) -> dict:
    out = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"bad assignment {item!r}, expected name=value")
        try:
            out[name.strip()] = model.parse_value(value)
        except ValueError as exc:
            raise UsageError(f"bad value for {name.strip()}: {exc}") from None
    return out


def _poly(text: str, idempotent: bool):
    cls = poly.IdPolynomial if idempotent else poly.Polynomial
    return cls.of(parse(text))


def _dispatch(args, out, err) -> int:
    mode = FULL_PARENS if getattr(args, "full_parens", False) else PRETTY
    settings = load_settings(bf_step_budget=getattr(args, "bf_step_budget", None),
                             bf_max_term_size=getattr(args, "bf_max_term_size", None))
    caps = {"step_budget": settings.step_budget, "max_term_size": settings.max_term_size}

    def show(t):
        print(render(t, mode), file=out)

    cmd = args.command
    if cmd == "canon":
        show(canon.canonical_term(parse(args.term)))
    elif cmd == "simplify":
        show(simplify(parse(args.term)))
    elif cmd == "eqv":
        s, t = parse(args.term1), parse(args.term2)
        theory = Theory.from_name(args.theory)
        if theory in (Theory.RD, Theory.IDRD) and max(s.size, t.size) > EXPENSIVE_SIZE:
            print(f"{PROG}: warning: inputs above size {EXPENSIVE_SIZE} may take exponential time",
                  file=err)
        answer = equivalent(s, t, theory, **caps)
        print("true" if answer else "false", file=out)
        return 0 if answer else 1
    elif cmd == "nf":
        trs = rules_R_id() if args.trs == "rid" else rules_R()
        report = normal_form(parse(args.term), trs, args.strategy, trace=args.trace, **caps)
        if args.trace:
            for step in report.trace:
                print(step.format(mode), file=out)
        show(report.result)
        if args.stats:
            print(f"steps = {report.total_steps}", file=out)
            print(f"distributivity_steps = {report.distributivity_steps}", file=out)
    elif cmd in ("mul", "add"):
        p, q = _poly(args.term1, args.id), _poly(args.term2, args.id)
        op = {("mul", False): poly.mul_rd, ("mul", True): poly.mul_id,
              ("add", False): poly.add, ("add", True): poly.add_id}[cmd, args.id]
        show(op(p, q).rep)
    elif cmd == "eval":
        model = get_model(args.model)
        value = evaluate(parse(args.term), model, _parse_assignment(args.assign, model))
        print(model.format_value(value), file=out)
    elif cmd == "large":
        answer = mx.is_large(_poly(args.term, True))
        print("true" if answer else "false", file=out)
        return 0 if answer else 1
    elif cmd == "witness":
        if args.n < 0:
            raise UsageError("n must be non-negative")
        show(mx.p_witness(args.n).rep)
    elif cmd == "wcl":
        seed = [mx.m_inject(_poly(part, True)) for part in args.terms.split(",") if part.strip()]
        for element in sorted(mx.weak_closure(seed, args.max_iter)):
            if element.kind == mx.SMALL_KIND:
                show(element.payload.rep)
            else:
                print(element, file=out)
    elif cmd == "dot":
        out.write(canon.to_dot(parse(args.term)))
    return 0


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args, out, err)
    except UsageError as exc:
        print(f"{PROG}: usage error: {exc}", file=err)
        return 2
    except BudgetExceeded as exc:
        print(f"{PROG}: {type(exc).__name__}: {exc}", file=err)
        return 3
    except (BimonoidError, ValueError) as exc:
        print(f"{PROG}: {type(exc).__name__}: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
