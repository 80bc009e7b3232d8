"""Equality of nets modulo rewiring and support isomorphism, and a bounded
search for equality modulo the equations of a theory."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .correctness import is_correct_contract as is_correct
from .formula import UNIT_LABEL
from .prenet import SUP, Net, NetError, PortRef, canonical_form, label_bijections, relabel
from .term import Comp, HomT, TensorT, Term, TermTypeError, infer_type, print_term
from .translate import translate


def rewire_moves(net: Net) -> list[Net]:
    """Every correct net obtained by retargeting one edge out of a unit port."""
    if not is_correct(net):
        raise NetError("rewiring needs a correct net")
    targets = [ref for ref, _ in net.target_ports()]
    moves = []
    for s, t in net.unit_edges():
        others = [e for e in net.edges if e[0] != s]
        for t2 in targets:
            if t2 == t:
                continue
            candidate = net.with_edges(others + [(s, t2)])
            if is_correct(candidate):
                moves.append(candidate)
    return moves


def _sort_edges(net: Net) -> frozenset:
    return frozenset((s, t) for s, t in net.edges if net.port(s).label != UNIT_LABEL)


def _unit_sources(net: Net) -> list:
    return [r for r, p in net.source_ports() if p.label == UNIT_LABEL]


def rewiring_invariant(net: Net) -> tuple:
    """A key shared by all nets in one rewiring class (a necessary condition for equality)."""
    shape = canonical_form(net.with_edges(_sort_edges(net)))
    return shape, len(_unit_sources(net))


@dataclass
class SearchStats:
    visited: int = 0
    expanded: int = 0


def _aligned_bijections(f: Net, g: Net) -> list[dict[int, int]]:
    """Support bijections carrying the sort edges of ``f`` onto those of ``g``."""
    want = _sort_edges(g)
    out = []
    for mapping in label_bijections(f.support, g.support):
        moved = relabel(f.with_edges(_sort_edges(f)), mapping, g.support)
        if frozenset(moved.edges) == want:
            out.append(mapping)
    return out


def nets_equal(f: Net, g: Net, stats: SearchStats | None = None) -> bool:
    """Decide whether ``f`` and ``g`` are equal up to rewiring and support isomorphism.

    Explores the rewiring class of ``f`` (finite: only unit edges move, among
    finitely many targets), ordered by how many unit edges still disagree
    with ``g``.  The whole class is visited before answering False.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise NetError(f"arity mismatch: {f.dom} -> {f.cod} versus {g.dom} -> {g.cod}")
    if stats is None:
        stats = SearchStats()
    goal = canonical_form(g)
    start = canonical_form(f)
    stats.visited = 1
    if start == goal:
        return True
    mappings = _aligned_bijections(f, g)
    if not mappings:
        return False
    if not is_correct(f) or not is_correct(g):
        raise NetError("nets_equal needs correct nets")
    g_link = g.linking
    sources = _unit_sources(f)

    def distance(n: Net) -> int:
        best = len(sources)
        for mapping in mappings:
            link = relabel(n, mapping, g.support).linking
            best = min(best, sum(
                link.get(s2) != g_link.get(s2)
                for s2 in (_move(s, mapping) for s in sources)))
        return best

    seen = {start}
    tie = itertools.count()
    queue = [(distance(f), next(tie), f)]
    while queue:
        d, _, n = heapq.heappop(queue)
        if d == 0:
            return True
        stats.expanded += 1
        for m in rewire_moves(n):
            key = canonical_form(m)
            if key in seen:
                continue
            if key == goal:
                stats.visited = len(seen) + 1
                return True
            seen.add(key)
            heapq.heappush(queue, (distance(m), next(tie), m))
        stats.visited = len(seen)
    return False


def _move(ref: PortRef, mapping) -> PortRef:
    return PortRef(SUP, ref.path, mapping[ref.index]) if ref.region == SUP else ref


def rewiring_orbit(net: Net) -> list[Net]:
    """All nets reachable by rewiring, one per support-isomorphism class, BFS order."""
    seen = {canonical_form(net): net}
    frontier = [net]
    while frontier:
        nxt = []
        for n in frontier:
            for m in rewire_moves(n):
                key = canonical_form(m)
                if key not in seen:
                    seen[key] = m
                    nxt.append(m)
        frontier = nxt
    return list(seen.values())


# -- equality modulo a theory -------------------------------------------------------


@dataclass(frozen=True)
class Step:
    equation: str
    forward: bool  # True: lhs replaced by rhs
    before: Term
    after: Term

    def __str__(self) -> str:
        arrow = "->" if self.forward else "<-"
        return f"{self.equation} ({arrow}): {print_term(self.before)}  ~>  {print_term(self.after)}"


@dataclass(frozen=True)
class Equal:
    trace: tuple[Step, ...]

    @property
    def equation_names(self) -> list[str]:
        return [s.equation for s in self.trace]


@dataclass(frozen=True)
class NotFoundWithinBound:
    depth: int
    explored: int = field(default=0, compare=False)


def _chain(t: Term) -> list[Term]:
    if isinstance(t, Comp):
        return _chain(t.after) + _chain(t.before)
    return [t]


def _unchain(items: list[Term]) -> Term:
    t = items[-1]
    for item in reversed(items[:-1]):
        t = Comp(item, t)
    return t


def normalize(t: Term) -> Term:
    """Right-nest every composition chain; nets do not see the bracketing."""
    if isinstance(t, Comp):
        return _unchain([normalize(x) for x in _chain(t)])
    if isinstance(t, TensorT):
        return TensorT(normalize(t.left), normalize(t.right))
    if isinstance(t, HomT):
        return HomT(normalize(t.left), normalize(t.right))
    return t


def rewrites(t: Term, pattern: list[Term], replacement: list[Term]):
    """Every term obtained by replacing one occurrence of ``pattern``.

    Occurrences are subterms, or contiguous runs inside a composition chain.
    """
    items = _chain(t)
    k = len(pattern)
    for i in range(len(items) - k + 1):
        if items[i:i + k] == pattern:
            yield _unchain(items[:i] + replacement + items[i + k:])
    for i, item in enumerate(items):
        if isinstance(item, (TensorT, HomT)):
            cls = type(item)
            inner = [cls(r, item.right) for r in rewrites(item.left, pattern, replacement)]
            inner += [cls(item.left, r) for r in rewrites(item.right, pattern, replacement)]
            for r in inner:
                yield _unchain(items[:i] + [r] + items[i + 1:])


def one_step(t: Term, theory) -> list[tuple[str, bool, Term]]:
    out = []
    for eq in theory.equations:
        lhs, rhs = _chain(normalize(eq.lhs)), _chain(normalize(eq.rhs))
        for forward, pat, rep in ((True, lhs, rhs), (False, rhs, lhs)):
            for r in rewrites(t, pat, rep):
                out.append((eq.name, forward, r))
    return out


class _Side:
    def __init__(self, root: Term, sig):
        self.sig = sig
        self.parent: dict[Term, tuple[Term, str, bool] | None] = {root: None}
        self.frontier = [root]
        self.level = 0
        self.by_key: dict[tuple, list[tuple[Term, Net]]] = {}
        self.add(root)

    def add(self, t: Term) -> tuple[tuple, Net]:
        net = translate(t, self.sig)
        key = rewiring_invariant(net)
        self.by_key.setdefault(key, []).append((t, net))
        return key, net

    def path(self, t: Term) -> list[tuple[Term, str, bool, Term]]:
        steps = []
        while self.parent[t] is not None:
            prev, name, forward = self.parent[t]
            steps.append((prev, name, forward, t))
            t = prev
        return steps[::-1]


def theory_equal_bounded(t1: Term, t2: Term, theory, depth: int):
    """Search for a chain of at most ``depth`` equation applications joining two terms.

    Returns ``Equal(trace)`` when found (sound); ``NotFoundWithinBound``
    otherwise, which is not a proof of inequality.  Terms meet as soon as
    their nets are equal, so structural rearrangements cost nothing.
    """
    sig = theory.signature
    if infer_type(t1, sig) != infer_type(t2, sig):
        raise TermTypeError(f"terms have different types: {infer_type(t1, sig)} and {infer_type(t2, sig)}")
    for eq in theory.equations:
        if infer_type(eq.lhs, sig) != infer_type(eq.rhs, sig):
            raise TermTypeError(f"equation {eq.name} is ill-typed")
    a, b = _Side(normalize(t1), sig), _Side(normalize(t2), sig)
    if nets_equal(translate(t1, sig), translate(t2, sig)):
        return Equal(())

    def meet(other: _Side, key, net) -> Term | None:
        for u, unet in other.by_key.get(key, ()):
            if nets_equal(net, unet):
                return u
        return None

    def build(ta: Term, tb: Term) -> Equal:
        steps = [Step(name, fw, before, after) for before, name, fw, after in a.path(ta)]
        for before, name, fw, after in reversed(b.path(tb)):
            steps.append(Step(name, not fw, after, before))
        return Equal(tuple(steps))

    while a.level + b.level < depth:
        live = [s for s in (a, b) if s.frontier]
        if not live:
            break
        side = min(live, key=lambda s: len(s.frontier))
        other = b if side is a else a
        nxt = []
        for t in side.frontier:
            for name, forward, r in one_step(t, theory):
                if r in side.parent:
                    continue
                try:
                    infer_type(r, sig)
                except TermTypeError:
                    continue
                side.parent[r] = (t, name, forward)
                nxt.append(r)
                key, net = side.add(r)
                u = meet(other, key, net)
                if u is not None:
                    return build(r, u) if side is a else build(u, r)
        side.frontier = nxt
        side.level += 1
    return NotFoundWithinBound(depth, len(a.parent) + len(b.parent))
