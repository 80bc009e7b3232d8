"""IMLL formulas, their signed leaf ports, and the one-sided MLL translation.

A formula is built from sort atoms, the unit ``I``, tensor ``*`` and linear
implication ``-o``.  Positions inside a formula are addressed by paths: strings
over ``"L"``/``"R"`` read from the root, where for ``a -o b`` the antecedent
``a`` is ``L`` and the consequent ``b`` is ``R``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Union

from ._lexer import ParseError, TokenStream

UNIT_LABEL = "I"


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be nonempty")

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Unit:
    def __str__(self) -> str:
        return UNIT_LABEL


class _CachedHash:
    # formulas are hashed constantly as cache keys; trees are immutable
    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((type(self).__name__, *(getattr(self, f) for f in self.__dataclass_fields__)))
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True, eq=True)
class Tensor(_CachedHash):
    left: Formula
    right: Formula

    __hash__ = _CachedHash.__hash__

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, eq=True)
class Hom(_CachedHash):
    antecedent: Formula
    consequent: Formula

    __hash__ = _CachedHash.__hash__

    def __str__(self) -> str:
        return print_formula(self)


Formula = Union[Atom, Unit, Tensor, Hom]


def children(f: Formula) -> tuple[Formula, Formula] | None:
    if isinstance(f, Tensor):
        return f.left, f.right
    if isinstance(f, Hom):
        return f.antecedent, f.consequent
    return None


def subformula(f: Formula, path: str) -> Formula:
    for step in path:
        kids = children(f)
        if kids is None:
            raise KeyError(f"path {path!r} runs past a leaf")
        f = kids[0] if step == "L" else kids[1]
    return f


def nodes(f: Formula, path: str = "", positive: bool = True) -> Iterator[tuple[str, Formula, bool]]:
    """Yield ``(path, subformula, positive)`` in pre-order.

    ``positive`` is the parity of the number of ``-o`` antecedents crossed
    on the way down from the root.
    """
    yield path, f, positive
    if isinstance(f, Tensor):
        yield from nodes(f.left, path + "L", positive)
        yield from nodes(f.right, path + "R", positive)
    elif isinstance(f, Hom):
        yield from nodes(f.antecedent, path + "L", not positive)
        yield from nodes(f.consequent, path + "R", positive)


def leaf_label(f: Formula) -> str:
    return f.name if isinstance(f, Atom) else UNIT_LABEL


def sorts_of(f: Formula) -> set[str]:
    return {g.name for _, g, _ in nodes(f) if isinstance(g, Atom)}


def size(f: Formula) -> int:
    """Number of leaves."""
    kids = children(f)
    if kids is None:
        return 1
    return size(kids[0]) + size(kids[1])


# -- ports ---------------------------------------------------------------------


@dataclass(frozen=True)
class Port:
    path: str
    label: str
    positive: bool

    def __str__(self) -> str:
        return f"{self.path or '.'}:{self.label}{'+' if self.positive else '-'}"


@lru_cache(maxsize=None)
def ports(f: Formula) -> tuple[Port, ...]:
    """Leaf occurrences of ``f`` in left-to-right order, signed by polarity."""
    return tuple(
        Port(path, leaf_label(g), pos)
        for path, g, pos in nodes(f)
        if isinstance(g, (Atom, Unit))
    )


@lru_cache(maxsize=None)
def port_map(f: Formula) -> dict[str, Port]:
    return {p.path: p for p in ports(f)}


def positive_ports(f: Formula) -> tuple[Port, ...]:
    return tuple(p for p in ports(f) if p.positive)


def negative_ports(f: Formula) -> tuple[Port, ...]:
    return tuple(p for p in ports(f) if not p.positive)


# -- one-sided classical MLL -----------------------------------------------------
# Every node keeps the path of the IMLL node it came from; the shapes agree,
# so leaves point straight back at their ports.


@dataclass(frozen=True)
class PosAtom:
    sort: str
    path: str = field(default="", compare=False)

    def __str__(self) -> str:
        return self.sort


@dataclass(frozen=True)
class NegAtom:
    sort: str
    path: str = field(default="", compare=False)

    def __str__(self) -> str:
        return f"{self.sort}^"


@dataclass(frozen=True)
class One:
    path: str = field(default="", compare=False)

    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Bot:
    path: str = field(default="", compare=False)

    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class Times:
    left: MLLFormula
    right: MLLFormula
    path: str = field(default="", compare=False)

    def __str__(self) -> str:
        return f"({self.left} (x) {self.right})"


@dataclass(frozen=True)
class Par:
    left: MLLFormula
    right: MLLFormula
    path: str = field(default="", compare=False)

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


MLLFormula = Union[PosAtom, NegAtom, One, Bot, Times, Par]


@lru_cache(maxsize=None)
def to_one_sided(f: Formula, negated: bool = False, path: str = "") -> MLLFormula:
    """Translate to classical MLL; ``negated`` gives the De Morgan dual."""
    if isinstance(f, Atom):
        return NegAtom(f.name, path) if negated else PosAtom(f.name, path)
    if isinstance(f, Unit):
        return Bot(path) if negated else One(path)
    if isinstance(f, Tensor):
        left = to_one_sided(f.left, negated, path + "L")
        right = to_one_sided(f.right, negated, path + "R")
        return Par(left, right, path) if negated else Times(left, right, path)
    # (a -o b)' = ~a' | b'
    left = to_one_sided(f.antecedent, not negated, path + "L")
    right = to_one_sided(f.consequent, negated, path + "R")
    return Times(left, right, path) if negated else Par(left, right, path)


def mll_nodes(m: MLLFormula) -> Iterator[MLLFormula]:
    yield m
    if isinstance(m, (Times, Par)):
        yield from mll_nodes(m.left)
        yield from mll_nodes(m.right)


def mll_leaves(m: MLLFormula) -> list[MLLFormula]:
    return [n for n in mll_nodes(m) if not isinstance(n, (Times, Par))]


def par_paths(m: MLLFormula) -> list[str]:
    return [n.path for n in mll_nodes(m) if isinstance(n, Par)]


# -- concrete syntax -----------------------------------------------------------


def parse_formula(text: str, sorts=None) -> Formula:
    """Parse ``text``; when ``sorts`` is given, atoms must be declared sorts."""
    ts = TokenStream(text)
    f = parse_formula_from(ts, sorts)
    ts.expect_eof()
    return f


def parse_formula_from(ts: TokenStream, sorts) -> Formula:
    left = _parse_tens(ts, sorts)
    if ts.at("-o"):
        ts.next()
        return Hom(left, parse_formula_from(ts, sorts))
    return left


def _parse_tens(ts: TokenStream, sorts) -> Formula:
    f = parse_formula_atom(ts, sorts)
    while ts.at("*"):
        ts.next()
        f = Tensor(f, parse_formula_atom(ts, sorts))
    return f


def parse_formula_atom(ts: TokenStream, sorts) -> Formula:
    tok = ts.peek
    if ts.at("("):
        ts.next()
        f = parse_formula_from(ts, sorts)
        ts.expect(")")
        return f
    if tok.kind != "ident":
        ts.error("expected a formula")
    ts.next()
    if tok.value == UNIT_LABEL:
        return Unit()
    if sorts is not None and tok.value not in sorts:
        raise ParseError(f"unknown sort {tok.value!r}", tok.pos, ts.text)
    if tok.value.endswith("'"):
        raise ParseError(f"invalid sort name {tok.value!r}", tok.pos, ts.text)
    return Atom(tok.value)


def print_formula(f: Formula) -> str:
    if isinstance(f, Hom):
        return f"{_print_tens(f.antecedent)} -o {print_formula(f.consequent)}"
    return _print_tens(f)


def _print_tens(f: Formula) -> str:
    if isinstance(f, Tensor):
        return f"{_print_tens(f.left)} * {print_atom(f.right)}"
    return print_atom(f)


def print_atom(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Unit):
        return UNIT_LABEL
    return f"({print_formula(f)})"
