"""Command-line front end.

Exit status: 0 success, 1 a check came out false, 2 equality unknown within
the search bound, 64 usage error, 65 malformed input (syntax, typing or net
format), 66 missing input file.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .correctness import failing_switching, is_correct, par_count, enumerate_switchings
from .dot import net_to_dot, switching_to_dot
from .equivalence import Equal, nets_equal, theory_equal_bounded
from .prenet import NetError, compose, net_from_json, net_to_json
from .term import TermTypeError, infer_type, parse_term
from .translate import translate
from .theory import load_theory

EX_OK, EX_FALSE, EX_UNKNOWN = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_NOINPUT = 64, 65, 66


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _load(args):
    theory = load_theory(args.theory)
    return theory, theory.signature


def cmd_check(args, out) -> int:
    _, sig = _load(args)
    a, b = infer_type(parse_term(args.term, sig), sig)
    print(f"{a} -> {b}", file=out)
    return EX_OK


def cmd_net(args, out) -> int:
    _, sig = _load(args)
    net = translate(parse_term(args.term, sig), sig)
    if args.format == "dot":
        out.write(net_to_dot(net))
    else:
        print(_dump(net_to_json(net)), file=out)
    return EX_OK


def cmd_render(args, out) -> int:
    args.format = "dot"
    return cmd_net(args, out)


def cmd_compose(args, out) -> int:
    _, sig = _load(args)
    f = translate(parse_term(args.first, sig), sig)
    g = translate(parse_term(args.second, sig), sig)
    print(_dump(net_to_json(compose(f, g))), file=out)
    return EX_OK


def cmd_correct(args, out) -> int:
    sig = load_theory(args.theory).signature if args.theory else None
    with open(args.netfile) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise NetError(f"{args.netfile}: not valid JSON: {e}") from None
    net = net_from_json(obj, sig)
    if is_correct(net):
        print("correct", file=out)
        return EX_OK
    graph, reason, witness = failing_switching(net)
    if reason == "cycle":
        print(f"incorrect: cycle {' '.join(map(str, witness))}", file=out)
        highlight = witness
    else:
        print(f"incorrect: {len(witness)} connected components", file=out)
        highlight = ()
    if args.explain:
        out.write(switching_to_dot(net, graph, highlight))
    return EX_FALSE


def cmd_equal(args, out) -> int:
    theory, sig = _load(args)
    t1, t2 = parse_term(args.first, sig), parse_term(args.second, sig)
    if infer_type(t1, sig) != infer_type(t2, sig):
        raise TermTypeError(f"terms have different types: {infer_type(t1, sig)} and {infer_type(t2, sig)}")
    if args.depth == 0 or not theory.equations:
        if nets_equal(translate(t1, sig), translate(t2, sig)):
            print("EQUAL", file=out)
            return EX_OK
        print("NOT-EQUAL-FREE", file=out)
        return EX_FALSE
    verdict = theory_equal_bounded(t1, t2, theory, args.depth)
    if isinstance(verdict, Equal):
        print("EQUAL", file=out)
        for step in verdict.trace:
            print(f"  {step}", file=out)
        return EX_OK
    print(f"UNKNOWN({args.depth})", file=out)
    return EX_UNKNOWN


def cmd_switchings(args, out) -> int:
    _, sig = _load(args)
    net = translate(parse_term(args.term, sig), sig)
    if args.count:
        print(2 ** par_count(net), file=out)
        return EX_OK
    for k, g in enumerate(enumerate_switchings(net)):
        choice = " ".join(f"{node}:{side}" for node, side in g.choice) or "-"
        print(f"{k} {'tree' if g.is_tree() else 'not-a-tree'} {choice}", file=out)
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="smcnets", description="Proof nets for free symmetric monoidal closed categories.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_theory(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("theory", help="theory file, or a bundled fixture name such as lambda.smc")
        return s

    s = with_theory("check", "print the arity of a term")
    s.add_argument("term")
    s.set_defaults(run=cmd_check)

    s = with_theory("net", "translate a term to a net")
    s.add_argument("term")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--dot", dest="format", action="store_const", const="dot")
    s.set_defaults(run=cmd_net, format="json")

    s = with_theory("render", "translate a term and print the net as DOT")
    s.add_argument("term")
    s.set_defaults(run=cmd_render)

    s = with_theory("compose", "compose two terms' nets, the first applied first")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(run=cmd_compose)

    s = sub.add_parser("correct", help="check a JSON net for correctness")
    s.add_argument("netfile")
    s.add_argument("--theory", help="theory resolving support labels")
    s.add_argument("--explain", action="store_true", help="print the first failing switching as DOT")
    s.set_defaults(run=cmd_correct)

    s = with_theory("equal", "search for equality modulo the theory's equations")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--depth", type=int, default=2)
    s.set_defaults(run=cmd_equal)

    s = with_theory("switchings", "list the switchings of a term's net")
    s.add_argument("term")
    s.add_argument("--count", action="store_true")
    s.set_defaults(run=cmd_switchings)
    return p


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        if getattr(args, "depth", 0) < 0:
            raise _UsageError("--depth must be nonnegative")
        return args.run(args, out)
    except _UsageError as e:
        print(e, file=err)
        return EX_USAGE
    except ValueError as e:  # ParseError, TermTypeError and NetError among them
        print(f"error: {e}", file=err)
        return EX_DATAERR
    except (FileNotFoundError, IsADirectoryError) as e:
        print(f"error: {e}", file=err)
        return EX_NOINPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
