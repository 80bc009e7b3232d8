"""Derived terms: categorical combinators over a signature.

Concrete syntax (loosest first)::

    t . u        composition, u applied first, right-associative
    t * u        tensor, left-associative
    t -o u       hom (contravariant in t)
    id A | sym A B | assoc A B C | assoc' A B C | lunit A | lunit' A
    runit A | runit' A | eval A B | coeval A B | <op-name> | ( t )

where each ``A`` is an atomic or parenthesized formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from ._lexer import ParseError, TokenStream
from .formula import Formula, Hom, Tensor, Unit, parse_formula_atom, print_atom


class TermTypeError(ValueError):
    pass


class _Printable:
    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Gen(_Printable):
    name: str


@dataclass(frozen=True)
class Id(_Printable):
    a: Formula


@dataclass(frozen=True)
class Comp(_Printable):
    after: Term
    before: Term


@dataclass(frozen=True)
class TensorT(_Printable):
    left: Term
    right: Term


@dataclass(frozen=True)
class HomT(_Printable):
    left: Term
    right: Term


@dataclass(frozen=True)
class Assoc(_Printable):
    a: Formula
    b: Formula
    c: Formula


@dataclass(frozen=True)
class AssocInv(_Printable):
    a: Formula
    b: Formula
    c: Formula


@dataclass(frozen=True)
class Lunit(_Printable):
    a: Formula


@dataclass(frozen=True)
class LunitInv(_Printable):
    a: Formula


@dataclass(frozen=True)
class Runit(_Printable):
    a: Formula


@dataclass(frozen=True)
class RunitInv(_Printable):
    a: Formula


@dataclass(frozen=True)
class Sym(_Printable):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Eval(_Printable):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Coeval(_Printable):
    a: Formula
    b: Formula


Term = Union[Gen, Id, Comp, TensorT, HomT, Assoc, AssocInv, Lunit, LunitInv,
             Runit, RunitInv, Sym, Eval, Coeval]

STRUCTURAL = (Assoc, AssocInv, Lunit, LunitInv, Runit, RunitInv, Sym, Eval, Coeval)

# keyword -> (constructor, number of formula arguments)
KEYWORDS = {
    "id": (Id, 1),
    "sym": (Sym, 2),
    "assoc": (Assoc, 3),
    "assoc'": (AssocInv, 3),
    "lunit": (Lunit, 1),
    "lunit'": (LunitInv, 1),
    "runit": (Runit, 1),
    "runit'": (RunitInv, 1),
    "eval": (Eval, 2),
    "coeval": (Coeval, 2),
}
_KEYWORD_OF = {cls: kw for kw, (cls, _) in KEYWORDS.items()}


def formula_args(t: Term) -> tuple[Formula, ...]:
    if isinstance(t, Id):
        return (t.a,)
    if isinstance(t, (Assoc, AssocInv)):
        return (t.a, t.b, t.c)
    if isinstance(t, (Lunit, LunitInv, Runit, RunitInv)):
        return (t.a,)
    if isinstance(t, (Sym, Eval, Coeval)):
        return (t.a, t.b)
    return ()


def subterms(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Comp):
        return (t.after, t.before)
    if isinstance(t, (TensorT, HomT)):
        return (t.left, t.right)
    return ()


def generators(t: Term) -> Iterator[str]:
    if isinstance(t, Gen):
        yield t.name
    for s in subterms(t):
        yield from generators(s)


def depth(t: Term) -> int:
    kids = subterms(t)
    return 1 + max((depth(k) for k in kids), default=0)


# -- typing ----------------------------------------------------------------------


def infer_type(t: Term, sig) -> tuple[Formula, Formula]:
    """Return ``(source, target)`` of a derived term, or raise TermTypeError."""
    if isinstance(t, Gen):
        op = sig.ops.get(t.name)
        if op is None:
            raise TermTypeError(f"unknown operation {t.name!r}")
        return op.source, op.target
    if isinstance(t, Id):
        return t.a, t.a
    if isinstance(t, Comp):
        a, b = infer_type(t.before, sig)
        b2, c = infer_type(t.after, sig)
        if b != b2:
            raise TermTypeError(
                f"cannot compose: {print_term(t.before)} has target {b} "
                f"but {print_term(t.after)} has source {b2}")
        return a, c
    if isinstance(t, TensorT):
        a, b = infer_type(t.left, sig)
        c, d = infer_type(t.right, sig)
        return Tensor(a, c), Tensor(b, d)
    if isinstance(t, HomT):
        # f: a -> b, g: c -> d gives f -o g : (b -o c) -> (a -o d)
        a, b = infer_type(t.left, sig)
        c, d = infer_type(t.right, sig)
        return Hom(b, c), Hom(a, d)
    if isinstance(t, Assoc):
        return Tensor(t.a, Tensor(t.b, t.c)), Tensor(Tensor(t.a, t.b), t.c)
    if isinstance(t, AssocInv):
        return Tensor(Tensor(t.a, t.b), t.c), Tensor(t.a, Tensor(t.b, t.c))
    if isinstance(t, Lunit):
        return Tensor(Unit(), t.a), t.a
    if isinstance(t, LunitInv):
        return t.a, Tensor(Unit(), t.a)
    if isinstance(t, Runit):
        return Tensor(t.a, Unit()), t.a
    if isinstance(t, RunitInv):
        return t.a, Tensor(t.a, Unit())
    if isinstance(t, Sym):
        return Tensor(t.a, t.b), Tensor(t.b, t.a)
    if isinstance(t, Eval):
        return Tensor(Hom(t.a, t.b), t.a), t.b
    if isinstance(t, Coeval):
        return t.a, Hom(t.b, Tensor(t.a, t.b))
    raise TypeError(f"not a term: {t!r}")


# -- concrete syntax ---------------------------------------------------------------


def parse_term(text: str, sig) -> Term:
    """Parse and typecheck a term against ``sig``."""
    ts = TokenStream(text)
    t = parse_term_from(ts, sig)
    ts.expect_eof()
    try:
        infer_type(t, sig)
    except TermTypeError as e:
        raise TermTypeError(f"{e} in {text!r}") from None
    return t


def parse_term_from(ts: TokenStream, sig) -> Term:
    after = _parse_tens(ts, sig)
    if ts.at("."):
        ts.next()
        return Comp(after, parse_term_from(ts, sig))
    return after


def _parse_tens(ts: TokenStream, sig) -> Term:
    t = _parse_hom(ts, sig)
    while ts.at("*"):
        ts.next()
        t = TensorT(t, _parse_hom(ts, sig))
    return t


def _parse_hom(ts: TokenStream, sig) -> Term:
    t = _parse_prim(ts, sig)
    if ts.at("-o"):
        ts.next()
        return HomT(t, _parse_prim(ts, sig))
    return t


def _parse_prim(ts: TokenStream, sig) -> Term:
    tok = ts.peek
    if ts.at("("):
        ts.next()
        t = parse_term_from(ts, sig)
        ts.expect(")")
        return t
    if tok.kind != "ident":
        ts.error("expected a term")
    ts.next()
    if tok.value in KEYWORDS:
        cls, n = KEYWORDS[tok.value]
        return cls(*(parse_formula_atom(ts, sig.sorts) for _ in range(n)))
    if tok.value not in sig.ops:
        raise ParseError(f"unknown operation {tok.value!r}", tok.pos, ts.text)
    return Gen(tok.value)


def print_term(t: Term) -> str:
    if isinstance(t, Comp):
        return f"{_print_tens(t.after)} . {print_term(t.before)}"
    return _print_tens(t)


def _print_tens(t: Term) -> str:
    if isinstance(t, TensorT):
        return f"{_print_tens(t.left)} * {_print_hom(t.right)}"
    return _print_hom(t)


def _print_hom(t: Term) -> str:
    if isinstance(t, HomT):
        return f"{_print_prim(t.left)} -o {_print_prim(t.right)}"
    return _print_prim(t)


def _print_prim(t: Term) -> str:
    if isinstance(t, Gen):
        return t.name
    kw = _KEYWORD_OF.get(type(t))
    if kw is not None:
        return " ".join([kw, *(print_atom(a) for a in formula_args(t))])
    return f"({print_term(t)})"
