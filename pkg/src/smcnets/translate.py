"""From derived terms to nets."""

from __future__ import annotations

from functools import lru_cache

from .correctness import is_correct_contract as is_correct
from .formula import Hom, ports
from .prenet import Net, NetError, compose, cod, curry, dom, identity_net, sup, tensor, wire
from .term import (Assoc, AssocInv, Coeval, Comp, Eval, Gen, HomT, Id, Lunit, LunitInv, Runit,
                   RunitInv, Sym, TensorT, Term, infer_type)


def generator_net(name, sig) -> Net:
    """The net with support ``[name]`` that plugs the operation in between its ports."""
    op = sig.op(name)
    pairs = [(dom(p.path), sup(0, "L" + p.path)) for p in ports(op.source)]
    pairs += [(cod(p.path), sup(0, "R" + p.path)) for p in ports(op.target)]
    return wire(op.source, op.target, (op,), pairs)


def _along(a, src_prefix: str, dst_prefix: str, src=dom, dst=cod):
    return [(src(src_prefix + p.path), dst(dst_prefix + p.path)) for p in ports(a)]


def attach_orphan(net: Net, orphan) -> Net:
    """Link a source-side unit port to the first target-side port keeping ``net`` correct."""
    for target, _ in net.target_ports():
        candidate = net.with_edges(net.edges + ((orphan, target),))
        if is_correct(candidate):
            return candidate
    raise NetError(f"no correct attachment for {orphan} in {net}")


@lru_cache(maxsize=None)
def structural_net(k: Term) -> Net:
    src, tgt = infer_type(k, None)
    if isinstance(k, Assoc):
        pairs = _along(k.a, "L", "LL") + _along(k.b, "RL", "LR") + _along(k.c, "RR", "R")
    elif isinstance(k, AssocInv):
        pairs = _along(k.a, "LL", "L") + _along(k.b, "LR", "RL") + _along(k.c, "R", "RR")
    elif isinstance(k, Sym):
        pairs = _along(k.a, "L", "R") + _along(k.b, "R", "L")
    elif isinstance(k, Lunit):
        return attach_orphan(wire(src, tgt, (), _along(k.a, "R", "")), dom("L"))
    elif isinstance(k, LunitInv):
        pairs = _along(k.a, "", "R")
    elif isinstance(k, Runit):
        return attach_orphan(wire(src, tgt, (), _along(k.a, "L", "")), dom("R"))
    elif isinstance(k, RunitInv):
        pairs = _along(k.a, "", "L")
    elif isinstance(k, Eval):
        pairs = _along(k.a, "LL", "R", dom, dom) + _along(k.b, "LR", "")
    elif isinstance(k, Coeval):
        pairs = _along(k.a, "", "RL") + _along(k.b, "L", "RR", cod, cod)
    else:
        raise TypeError(f"not a structural constant: {k!r}")
    return wire(src, tgt, (), pairs)


def translate(t: Term, sig) -> Net:
    if isinstance(t, Gen):
        return generator_net(t.name, sig)
    if isinstance(t, Id):
        return identity_net(t.a)
    if isinstance(t, Comp):
        return compose(translate(t.before, sig), translate(t.after, sig))
    if isinstance(t, TensorT):
        return tensor(translate(t.left, sig), translate(t.right, sig))
    if isinstance(t, HomT):
        # f -o g  =  curry(g . eval . (id * f))
        _, b = infer_type(t.left, sig)
        c, _ = infer_type(t.right, sig)
        inner = compose(tensor(identity_net(Hom(b, c)), translate(t.left, sig)),
                        structural_net(Eval(b, c)))
        return curry(compose(inner, translate(t.right, sig)))
    return structural_net(t)
