"""Prenets: a support of operation labels plus a partial linking of ports.

A net ``a -> b`` owns three kinds of port regions: the domain ``a``, the
codomain ``b``, and one region per support entry, whose formula is the
operation's type ``s -o t``.  Ports split into a source side (domain-positive,
support-positive, codomain-negative) and a target side (the rest); the linking
is a partial function from source-side ports to target-side ports which is a
bijection on the ports of each sort.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .formula import Formula, Hom, Port, Tensor, UNIT_LABEL, parse_formula, port_map, ports, print_formula

DOM, COD, SUP = "dom", "cod", "sup"
_REGION_RANK = {DOM: 0, COD: 1, SUP: 2}


class NetError(ValueError):
    pass


@dataclass(frozen=True)
class PortRef:
    region: str
    path: str = ""
    index: int = 0

    @property
    def key(self) -> tuple[int, int, str]:
        return _REGION_RANK[self.region], self.index, self.path

    def __lt__(self, other: PortRef) -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        name = f"sup{self.index}" if self.region == SUP else self.region
        return f"{name}.{self.path or 'e'}"


def dom(path: str = "") -> PortRef:
    return PortRef(DOM, path)


def cod(path: str = "") -> PortRef:
    return PortRef(COD, path)


def sup(index: int, path: str = "") -> PortRef:
    return PortRef(SUP, path, index)


Edge = tuple[PortRef, PortRef]


@dataclass(frozen=True)
class Net:
    dom: Formula
    cod: Formula
    support: tuple  # of theory.Op
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @classmethod
    def make(cls, dom: Formula, cod: Formula, support: Iterable, linking: Mapping[PortRef, PortRef] | Iterable[Edge]) -> Net:
        if isinstance(linking, Mapping):
            linking = linking.items()
        return cls(dom, cod, tuple(support), tuple(linking))

    @cached_property
    def linking(self) -> dict[PortRef, PortRef]:
        return dict(self.edges)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(op.name for op in self.support)

    def region_formula(self, ref: PortRef) -> Formula:
        if ref.region == DOM:
            return self.dom
        if ref.region == COD:
            return self.cod
        return self.support[ref.index].type

    def port(self, ref: PortRef) -> Port:
        try:
            return port_map(self.region_formula(ref))[ref.path]
        except (KeyError, IndexError):
            raise NetError(f"{ref} is not a port") from None

    def is_source(self, ref: PortRef) -> bool:
        return is_source_side(ref.region, self.port(ref).positive)

    def regions(self) -> Iterator[tuple[PortRef, Formula]]:
        """``(root ref, formula)`` for domain, codomain, then each support entry."""
        yield PortRef(DOM), self.dom
        yield PortRef(COD), self.cod
        for i, op in enumerate(self.support):
            yield PortRef(SUP, "", i), op.type

    def all_ports(self) -> list[tuple[PortRef, Port]]:
        out = []
        for root, f in self.regions():
            out.extend((PortRef(root.region, p.path, root.index), p) for p in ports(f))
        return out

    def source_ports(self) -> list[tuple[PortRef, Port]]:
        return [(r, p) for r, p in self.all_ports() if is_source_side(r.region, p.positive)]

    def target_ports(self) -> list[tuple[PortRef, Port]]:
        """Target-side ports: codomain first, then domain, then support."""
        return [(r, p) for r, p in self.all_ports() if not is_source_side(r.region, p.positive)]

    def unit_edges(self) -> list[Edge]:
        return [(s, t) for s, t in self.edges if self.port(s).label == UNIT_LABEL]

    def with_edges(self, edges: Iterable[Edge]) -> Net:
        return Net(self.dom, self.cod, self.support, tuple(edges))

    def __str__(self) -> str:
        links = ", ".join(f"{s}->{t}" for s, t in self.edges)
        return f"Net({self.dom} -> {self.cod}; [{' '.join(self.labels)}]; {links})"


def is_source_side(region: str, positive: bool) -> bool:
    return positive if region != COD else not positive


def validate(net: Net) -> None:
    """Raise NetError unless ``net`` satisfies the prenet invariants."""
    hit: dict[PortRef, PortRef] = {}
    for s, t in net.edges:
        ps, pt = net.port(s), net.port(t)
        if not net.is_source(s):
            raise NetError(f"edge source {s} is not a source-side port")
        if net.is_source(t):
            raise NetError(f"edge target {t} is not a target-side port")
        if ps.label != UNIT_LABEL:
            if pt.label != ps.label:
                raise NetError(f"edge {s}->{t} joins sort {ps.label} to {pt.label}")
            if t in hit:
                raise NetError(f"{t} is the target of both {hit[t]} and {s}")
            hit[t] = s
    for ref, p in net.all_ports():
        if p.label == UNIT_LABEL:
            continue
        if net.is_source(ref) and ref not in net.linking:
            raise NetError(f"sort port {ref} has no outgoing edge")
        if not net.is_source(ref) and ref not in hit:
            raise NetError(f"sort port {ref} has no incoming edge")


# -- constructions -------------------------------------------------------------


def wire(dom_f: Formula, cod_f: Formula, support: tuple, pairs: Iterable[tuple[PortRef, PortRef]]) -> Net:
    """Build a net from unoriented port pairs, orienting each source -> target."""
    shell = Net(dom_f, cod_f, support, ())
    edges = []
    for p, q in pairs:
        sp, sq = shell.is_source(p), shell.is_source(q)
        if sp == sq:
            raise NetError(f"cannot link {p} and {q}: both on the same side")
        edges.append((p, q) if sp else (q, p))
    return Net(dom_f, cod_f, support, tuple(edges))


def identity_net(a: Formula) -> Net:
    return wire(a, a, (), ((dom(p.path), cod(p.path)) for p in ports(a)))


def _rename(ref: PortRef, table: Mapping[str, tuple[str, str]], shift: int = 0) -> PortRef:
    if ref.region == SUP:
        return PortRef(SUP, ref.path, ref.index + shift)
    region, prefix = table[ref.region]
    return PortRef(region, prefix + ref.path)


def compose(f: Net, g: Net) -> Net:
    """Glue ``f: a -> b`` and ``g: b -> c`` along the ports of ``b``.

    Each surviving source follows the alternating path through ``b``; a path
    that stops at an unlinked ``b`` port or loops inside ``b`` leaves its
    source unlinked.
    """
    if f.cod != g.dom:
        raise NetError(f"cannot compose: codomain {f.cod} differs from domain {g.dom}")
    shift = len(g.support)
    fl, gl = f.linking, g.linking

    def exit_of(target: PortRef, in_f: bool) -> PortRef | None:
        seen = set()
        while True:
            if in_f:
                if target.region != COD:
                    return PortRef(target.region, target.path, target.index + shift) if target.region == SUP else target
                nxt = gl.get(PortRef(DOM, target.path))
            else:
                if target.region != DOM:
                    return target
                nxt = fl.get(PortRef(COD, target.path))
            key = (in_f, target.path)
            if nxt is None or key in seen:
                return None
            seen.add(key)
            target, in_f = nxt, not in_f

    edges = []
    for s, t in f.edges:
        if s.region == COD:
            continue
        end = exit_of(t, True)
        if end is not None:
            src = PortRef(SUP, s.path, s.index + shift) if s.region == SUP else s
            edges.append((src, end))
    for s, t in g.edges:
        if s.region == DOM:
            continue
        end = exit_of(t, False)
        if end is not None:
            edges.append((s, end))
    return Net(f.dom, g.cod, g.support + f.support, tuple(edges))


def compose_all(*nets: Net) -> Net:
    """``compose_all(f, g, h)`` is ``h . g . f``."""
    result = nets[0]
    for n in nets[1:]:
        result = compose(result, n)
    return result


def tensor(f: Net, g: Net) -> Net:
    shift = len(f.support)
    left = {DOM: (DOM, "L"), COD: (COD, "L")}
    right = {DOM: (DOM, "R"), COD: (COD, "R")}
    edges = [(_rename(s, left), _rename(t, left)) for s, t in f.edges]
    edges += [(_rename(s, right, shift), _rename(t, right, shift)) for s, t in g.edges]
    return Net(Tensor(f.dom, g.dom), Tensor(f.cod, g.cod), f.support + g.support, tuple(edges))


def _curry_ref(ref: PortRef) -> PortRef:
    if ref.region == DOM:
        if ref.path[0] == "L":
            return dom(ref.path[1:])
        return cod("L" + ref.path[1:])
    if ref.region == COD:
        return cod("R" + ref.path)
    return ref


def _uncurry_ref(ref: PortRef) -> PortRef:
    if ref.region == DOM:
        return dom("L" + ref.path)
    if ref.region == COD:
        if ref.path[0] == "L":
            return dom("R" + ref.path[1:])
        return cod(ref.path[1:])
    return ref


def curry(f: Net) -> Net:
    """Transpose ``u * a -> d`` to ``u -> (a -o d)`` by re-indexing ports."""
    if not isinstance(f.dom, Tensor):
        raise NetError(f"curry needs a tensor domain, got {f.dom}")
    edges = tuple((_curry_ref(s), _curry_ref(t)) for s, t in f.edges)
    return Net(f.dom.left, Hom(f.dom.right, f.cod), f.support, edges)


def uncurry(f: Net) -> Net:
    if not isinstance(f.cod, Hom):
        raise NetError(f"uncurry needs a hom codomain, got {f.cod}")
    edges = tuple((_uncurry_ref(s), _uncurry_ref(t)) for s, t in f.edges)
    return Net(Tensor(f.dom, f.cod.antecedent), f.cod.consequent, f.support, edges)


# -- support isomorphism -----------------------------------------------------------


def relabel(net: Net, mapping: Mapping[int, int], support: tuple | None = None) -> Net:
    """Move support entry ``i`` to position ``mapping[i]``."""
    if support is None:
        support = [None] * len(net.support)
        for i, j in mapping.items():
            support[j] = net.support[i]

    def move(ref: PortRef) -> PortRef:
        return PortRef(SUP, ref.path, mapping[ref.index]) if ref.region == SUP else ref

    return Net(net.dom, net.cod, tuple(support), tuple((move(s), move(t)) for s, t in net.edges))


def _op_key(op) -> tuple[str, str, str]:
    return op.name, print_formula(op.source), print_formula(op.target)


def label_bijections(src: tuple, dst: tuple) -> Iterator[dict[int, int]]:
    """All label-preserving bijections between two supports."""
    if sorted(map(_op_key, src)) != sorted(map(_op_key, dst)):
        return
    groups: dict[tuple, tuple[list[int], list[int]]] = {}
    for i, op in enumerate(src):
        groups.setdefault(_op_key(op), ([], []))[0].append(i)
    for j, op in enumerate(dst):
        groups[_op_key(op)][1].append(j)
    choices = [[list(zip(a, perm)) for perm in itertools.permutations(b)] for a, b in groups.values()]
    for combo in itertools.product(*choices):
        yield dict(pair for block in combo for pair in block)


def support_iso_equal(f: Net, g: Net) -> bool:
    if f.dom != g.dom or f.cod != g.cod or len(f.edges) != len(g.edges):
        return False
    target = set(g.edges)
    for mapping in label_bijections(f.support, g.support):
        if set(relabel(f, mapping, g.support).edges) == target:
            return True
    return False


def _encode(edges) -> tuple:
    return tuple(sorted((s.key, t.key) for s, t in edges))


def canonical_form(net: Net) -> tuple:
    """Invariant of support isomorphism: equal iff ``support_iso_equal``."""
    order = sorted(range(len(net.support)), key=lambda i: _op_key(net.support[i]))
    canon_support = tuple(net.support[i] for i in order)
    best = None
    for mapping in label_bijections(net.support, canon_support):
        enc = _encode(relabel(net, mapping, canon_support).edges)
        if best is None or enc < best:
            best = enc
    return net.dom, net.cod, tuple(map(_op_key, canon_support)), best


# -- JSON ----------------------------------------------------------------------------


def ref_to_json(ref: PortRef) -> dict:
    region = {"sup": ref.index} if ref.region == SUP else ref.region
    return {"region": region, "path": ref.path}


def ref_from_json(obj) -> PortRef:
    region = obj["region"]
    path = obj.get("path", "")
    if not isinstance(path, str) or set(path) - {"L", "R"}:
        raise NetError(f"bad port path {path!r}")
    if isinstance(region, dict):
        return PortRef(SUP, path, int(region["sup"]))
    if region not in (DOM, COD):
        raise NetError(f"bad port region {region!r}")
    return PortRef(region, path)


def net_to_json(net: Net) -> dict:
    return {
        "dom": print_formula(net.dom),
        "cod": print_formula(net.cod),
        "support": list(net.labels),
        "edges": [[ref_to_json(s), ref_to_json(t)] for s, t in net.edges],
    }


def net_from_json(obj: Mapping, sig=None) -> Net:
    """Load a net; ``sig`` resolves support labels and is needed when the support is nonempty."""
    try:
        sorts = sig.sorts if sig is not None else None
        d = parse_formula(obj["dom"], sorts)
        c = parse_formula(obj["cod"], sorts)
        names = list(obj.get("support", []))
        if names and sig is None:
            raise NetError("a signature is needed to load a net with nonempty support")
        support = tuple(sig.op(n) for n in names)
        edges = tuple((ref_from_json(s), ref_from_json(t)) for s, t in obj["edges"])
    except (KeyError, TypeError) as e:
        raise NetError(f"malformed net JSON: {e}") from None
    net = Net(d, c, support, edges)
    if len(net.linking) != len(edges):
        raise NetError("a port has more than one outgoing edge")
    validate(net)
    return net
