"""Signatures, theories, the typing function on operation lists, and the
line-oriented theory file format::

    sort x
    op m : x * x -> x
    eq left_unit : m . (e * id x) = lunit x
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from ._lexer import ParseError, TokenStream
from .formula import (Formula, Hom, Tensor, Unit, UNIT_LABEL, parse_formula_from,
                      sorts_of)
from .term import KEYWORDS, Term, TermTypeError, infer_type, parse_term_from, print_term


@dataclass(frozen=True)
class Op:
    name: str
    source: Formula
    target: Formula

    @property
    def type(self) -> Formula:
        return Hom(self.source, self.target)

    def __str__(self) -> str:
        return f"{self.name} : {self.source} -> {self.target}"


@dataclass(frozen=True)
class Signature:
    sorts: frozenset[str]
    ops: Mapping[str, Op] = field(hash=False)

    def __post_init__(self):
        for op in self.ops.values():
            for f in (op.source, op.target):
                unknown = sorts_of(f) - self.sorts
                if unknown:
                    raise ValueError(f"operation {op.name} mentions undeclared sorts {sorted(unknown)}")

    @classmethod
    def build(cls, sorts: Iterable[str], ops: Iterable[Op]) -> Signature:
        table = {}
        for op in ops:
            if op.name in table:
                raise ValueError(f"duplicate operation {op.name!r}")
            table[op.name] = op
        return cls(frozenset(sorts), table)

    def op(self, name: str) -> Op:
        try:
            return self.ops[name]
        except KeyError:
            raise KeyError(f"unknown operation {name!r}") from None


@dataclass(frozen=True)
class Equation:
    name: str
    lhs: Term
    rhs: Term
    source: Formula
    target: Formula

    def __str__(self) -> str:
        return f"{self.name} : {print_term(self.lhs)} = {print_term(self.rhs)}"


@dataclass(frozen=True)
class Theory:
    signature: Signature
    equations: tuple[Equation, ...] = ()

    @property
    def sorts(self):
        return self.signature.sorts

    @property
    def ops(self):
        return self.signature.ops

    def equation(self, name: str) -> Equation:
        for eq in self.equations:
            if eq.name == name:
                return eq
        raise KeyError(name)


def ty(gamma: Iterable[str], sig: Signature) -> Formula:
    """``ty() = I``, ``ty(a) = s(a) -o t(a)``, lists nest to the left."""
    result = None
    for name in gamma:
        t = sig.op(name).type
        result = t if result is None else Tensor(result, t)
    return Unit() if result is None else result


def make_equation(name: str, lhs: Term, rhs: Term, sig: Signature) -> Equation:
    s1, t1 = infer_type(lhs, sig)
    s2, t2 = infer_type(rhs, sig)
    if (s1, t1) != (s2, t2):
        raise TermTypeError(
            f"equation {name}: sides have different types, "
            f"{s1} -> {t1} versus {s2} -> {t2}")
    return Equation(name, lhs, rhs, s1, t1)


def parse_theory(text: str) -> Theory:
    sorts: set[str] = set()
    ops: dict[str, Op] = {}
    equations: list[Equation] = []
    eq_names: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        ts = TokenStream(line)
        try:
            head = ts.expect_ident().value
            if head == "sort":
                tok = ts.expect_ident()
                if tok.value == UNIT_LABEL or tok.value in KEYWORDS or tok.value.endswith("'"):
                    raise ParseError(f"invalid sort name {tok.value!r}", tok.pos)
                if tok.value in sorts:
                    raise ParseError(f"duplicate sort {tok.value!r}", tok.pos)
                ts.expect_eof()
                sorts.add(tok.value)
            elif head == "op":
                tok = ts.expect_ident()
                name = tok.value
                if name in KEYWORDS or name == UNIT_LABEL:
                    raise ParseError(f"operation name {name!r} is reserved", tok.pos)
                if name in ops:
                    raise ParseError(f"duplicate operation {name!r}", tok.pos)
                ts.expect(":")
                source = parse_formula_from(ts, sorts)
                ts.expect("->")
                target = parse_formula_from(ts, sorts)
                ts.expect_eof()
                ops[name] = Op(name, source, target)
            elif head == "eq":
                tok = ts.expect_ident()
                if tok.value in eq_names:
                    raise ParseError(f"duplicate equation {tok.value!r}", tok.pos)
                ts.expect(":")
                sig = Signature(frozenset(sorts), dict(ops))
                lhs = parse_term_from(ts, sig)
                ts.expect("=")
                rhs = parse_term_from(ts, sig)
                ts.expect_eof()
                equations.append(make_equation(tok.value, lhs, rhs, sig))
                eq_names.add(tok.value)
            else:
                raise ParseError(f"expected 'sort', 'op' or 'eq', found {head!r}", 0)
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e.args[0]}") from None
        except TermTypeError as e:
            raise TermTypeError(f"line {lineno}: {e}") from None
    return Theory(Signature(frozenset(sorts), ops), tuple(equations))


FIXTURES = ("monoid.smc", "lambda.smc", "example.smc")


def fixture_text(name: str) -> str:
    return resources.files("smcnets.fixtures").joinpath(name).read_text()


def load_theory(name_or_path: str) -> Theory:
    """Load a theory file, falling back to the bundled fixtures by name."""
    path = Path(name_or_path)
    if path.is_file():
        return parse_theory(path.read_text())
    name = path.name if path.suffix else path.name + ".smc"
    if name in FIXTURES:
        return parse_theory(fixture_text(name))
    raise FileNotFoundError(f"no theory file {name_or_path!r}")
