"""Proof nets for free symmetric monoidal closed categories over a signature."""

from .correctness import enumerate_switchings, is_correct, par_count
from .equivalence import Equal, NotFoundWithinBound, nets_equal, rewire_moves, theory_equal_bounded
from .formula import Atom, Formula, Hom, Tensor, Unit, parse_formula, ports, to_one_sided
from .prenet import Net, PortRef, compose, curry, identity_net, support_iso_equal, tensor, uncurry
from .term import Term, infer_type, parse_term
from .theory import Signature, Theory, load_theory, parse_theory, ty
from .translate import generator_net, structural_net, translate

__all__ = [
    "Atom", "Equal", "Formula", "Hom", "Net", "NotFoundWithinBound", "PortRef", "Signature",
    "Tensor", "Term", "Theory", "Unit", "compose", "curry", "enumerate_switchings",
    "generator_net", "identity_net", "infer_type", "is_correct", "load_theory", "nets_equal",
    "par_count", "parse_formula", "parse_term", "parse_theory", "ports", "rewire_moves",
    "structural_net", "support_iso_equal", "tensor", "theory_equal_bounded", "to_one_sided",
    "translate", "ty", "uncurry",
]
