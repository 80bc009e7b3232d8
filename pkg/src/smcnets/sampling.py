"""Random formulas, well-typed terms and prenets for property testing."""

from __future__ import annotations

import random
from collections import defaultdict

from .formula import Atom, Formula, Hom, Tensor, Unit, UNIT_LABEL, size
from .prenet import Net
from .term import (Assoc, AssocInv, Coeval, Comp, Eval, Gen, HomT, Id, Lunit, LunitInv, Runit,
                   RunitInv, Sym, TensorT, Term, generators, infer_type)
from .theory import Op, Signature


def random_formula(rng: random.Random, sorts, leaves: int, unit_prob: float = 0.2) -> Formula:
    """A formula with exactly ``leaves`` leaves."""
    if leaves <= 1:
        if rng.random() < unit_prob:
            return Unit()
        return Atom(rng.choice(sorted(sorts)))
    k = rng.randint(1, leaves - 1)
    left = random_formula(rng, sorts, k, unit_prob)
    right = random_formula(rng, sorts, leaves - k, unit_prob)
    return Tensor(left, right) if rng.random() < 0.5 else Hom(left, right)


def random_signature(rng: random.Random, sorts=("x", "y"), n_ops: int = 3, max_leaves: int = 3) -> Signature:
    ops = []
    for i in range(n_ops):
        source = random_formula(rng, sorts, rng.randint(1, max_leaves))
        target = random_formula(rng, sorts, rng.randint(1, max_leaves))
        ops.append(Op(f"op{i}", source, target))
    return Signature.build(sorts, ops)


class TermSampler:
    """Generates well-typed terms; every produced type has at most ``max_type_leaves`` leaves.

    ``gen_prob`` is the chance that a leaf of the term is an operation rather
    than a structural constant chosen uniformly.
    """

    def __init__(self, sig: Signature, rng: random.Random, formula_leaves: int = 2,
                 unit_prob: float = 0.2, max_type_leaves: int = 10, max_gens: int | None = None,
                 gen_prob: float = 0.0):
        self.sig = sig
        self.rng = rng
        self.formula_leaves = formula_leaves
        self.unit_prob = unit_prob
        self.max_type_leaves = max_type_leaves
        self.max_gens = max_gens
        self.gen_prob = gen_prob

    def formula(self) -> Formula:
        return random_formula(self.rng, self.sig.sorts, self.rng.randint(1, self.formula_leaves), self.unit_prob)

    def _ok(self, t: Term) -> bool:
        a, b = infer_type(t, self.sig)
        if size(a) > self.max_type_leaves or size(b) > self.max_type_leaves:
            return False
        return self.max_gens is None or sum(1 for _ in generators(t)) <= self.max_gens

    def _pick(self, options):
        options = [o for o in options if o is not None]
        while options:
            make = self.rng.choice(options)
            t = make()
            if t is not None and self._ok(t):
                return t
            options.remove(make)
        return None

    def _constant(self) -> Term:
        f = self.formula
        choices = [
            lambda: Gen(self.rng.choice(sorted(self.sig.ops))) if self.sig.ops else Id(f()),
            lambda: Id(f()),
            lambda: Assoc(f(), f(), f()),
            lambda: AssocInv(f(), f(), f()),
            lambda: Lunit(f()), lambda: LunitInv(f()),
            lambda: Runit(f()), lambda: RunitInv(f()),
            lambda: Sym(f(), f()),
            lambda: Eval(f(), f()),
            lambda: Coeval(f(), f()),
        ]
        for _ in range(20):
            if self.sig.ops and self.rng.random() < self.gen_prob:
                t = choices[0]()
            else:
                t = self.rng.choice(choices)()
            if self._ok(t):
                return t
        return Id(Atom(sorted(self.sig.sorts)[0]))

    def term(self, depth: int) -> Term:
        """A term of depth at most ``depth`` with unconstrained type."""
        if depth <= 1 or self.rng.random() < 0.25:
            return self._constant()

        def comp():
            f = self.term(depth - 1)
            g = self.term_from(infer_type(f, self.sig)[1], depth - 1)
            return Comp(g, f)

        t = self._pick([
            comp,
            lambda: TensorT(self.term(depth - 1), self.term(depth - 1)),
            lambda: HomT(self.term(depth - 1), self.term(depth - 1)),
        ])
        return t if t is not None else self._constant()

    def term_from(self, a: Formula, depth: int) -> Term:
        """A term with source ``a``."""
        rng, f = self.rng, self.formula
        opts = [lambda: Id(a), lambda: LunitInv(a), lambda: RunitInv(a), lambda: Coeval(a, f())]
        gens = [(lambda op=op: Gen(op)) for op, o in sorted(self.sig.ops.items()) if o.source == a]
        opts += gens
        if isinstance(a, Tensor):
            l, r = a.left, a.right
            opts.append(lambda: Sym(l, r))
            if isinstance(r, Tensor):
                opts.append(lambda: Assoc(l, r.left, r.right))
            if isinstance(l, Tensor):
                opts.append(lambda: AssocInv(l.left, l.right, r))
            if isinstance(l, Unit):
                opts.append(lambda: Lunit(r))
            if isinstance(r, Unit):
                opts.append(lambda: Runit(l))
            if isinstance(l, Hom) and l.antecedent == r:
                opts.append(lambda: Eval(r, l.consequent))
        if depth > 1 and rng.random() < 0.7:
            def comp():
                first = self.term_from(a, depth - 1)
                return Comp(self.term_from(infer_type(first, self.sig)[1], depth - 1), first)
            opts = [comp]
            if isinstance(a, Tensor):
                opts.append(lambda: TensorT(self.term_from(a.left, depth - 1), self.term_from(a.right, depth - 1)))
            if isinstance(a, Hom):
                opts.append(lambda: HomT(self.term_to(a.antecedent, depth - 1), self.term_from(a.consequent, depth - 1)))
        elif gens and rng.random() < self.gen_prob:
            opts = gens
        t = self._pick(opts)
        return t if t is not None else Id(a)

    def term_to(self, b: Formula, depth: int) -> Term:
        """A term with target ``b``."""
        rng, f = self.rng, self.formula
        opts = [lambda: Id(b), lambda: Lunit(b), lambda: Runit(b), lambda: Eval(f(), b)]
        gens = [(lambda op=op: Gen(op)) for op, o in sorted(self.sig.ops.items()) if o.target == b]
        opts += gens
        if isinstance(b, Tensor):
            l, r = b.left, b.right
            opts.append(lambda: Sym(r, l))
            if isinstance(l, Tensor):
                opts.append(lambda: Assoc(l.left, l.right, r))
            if isinstance(r, Tensor):
                opts.append(lambda: AssocInv(l, r.left, r.right))
            if isinstance(l, Unit):
                opts.append(lambda: LunitInv(r))
            if isinstance(r, Unit):
                opts.append(lambda: RunitInv(l))
        if isinstance(b, Hom) and isinstance(b.consequent, Tensor) and b.consequent.right == b.antecedent:
            opts.append(lambda: Coeval(b.consequent.left, b.antecedent))
        if depth > 1 and rng.random() < 0.7:
            def comp():
                last = self.term_to(b, depth - 1)
                return Comp(last, self.term_to(infer_type(last, self.sig)[0], depth - 1))
            opts = [comp]
            if isinstance(b, Tensor):
                opts.append(lambda: TensorT(self.term_to(b.left, depth - 1), self.term_to(b.right, depth - 1)))
            if isinstance(b, Hom):
                opts.append(lambda: HomT(self.term_from(b.antecedent, depth - 1), self.term_to(b.consequent, depth - 1)))
        elif gens and rng.random() < self.gen_prob:
            opts = gens
        t = self._pick(opts)
        return t if t is not None else Id(b)


def scramble(net: Net, rng: random.Random, drop_unit_prob: float = 0.1) -> Net:
    """A random prenet with the same ports as ``net``.

    Sort ports are re-paired by a random bijection per sort; each unit source
    gets a random target, or occasionally none.
    """
    sources: dict[str, list] = defaultdict(list)
    targets: dict[str, list] = defaultdict(list)
    all_targets = []
    for ref, p in net.all_ports():
        if net.is_source(ref):
            sources[p.label].append(ref)
        else:
            targets[p.label].append(ref)
            all_targets.append(ref)
    edges = []
    for label, srcs in sorted(sources.items()):
        if label == UNIT_LABEL:
            for s in srcs:
                if all_targets and rng.random() >= drop_unit_prob:
                    edges.append((s, rng.choice(all_targets)))
            continue
        tgts = list(targets[label])
        rng.shuffle(tgts)
        edges += list(zip(srcs, tgts))
    return net.with_edges(edges)
