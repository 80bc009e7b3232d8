import random

import pytest
from hypothesis import given, settings, strategies as st

from smcnets.correctness import is_correct_naive
from smcnets.equivalence import (Equal, NotFoundWithinBound, SearchStats, nets_equal, normalize, one_step,
                                 rewire_moves, rewiring_orbit, theory_equal_bounded)
from smcnets.formula import Atom, Tensor, UNIT_LABEL, Unit, parse_formula
from smcnets.prenet import NetError, compose, curry, identity_net, relabel, tensor
from smcnets.term import Comp, Eval, Gen, Id, Lunit, TermTypeError, infer_type, parse_term
from smcnets.theory import Theory
from smcnets.translate import structural_net, translate

from test_correctness import miswired_eval
from test_prenet import _interchange

x = Atom("x")
F = parse_formula


def _sort_edges(n):
    return {e for e in n.edges if n.port(e[0]).label != UNIT_LABEL}


def test_no_unit_edges_no_moves():
    assert rewire_moves(identity_net(x)) == []


def test_moves_need_a_correct_net():
    with pytest.raises(NetError):
        rewire_moves(miswired_eval())


def test_left_unitor_moves_match_the_oracle():
    n = structural_net(Lunit(x))
    (s, t), = n.unit_edges()
    expected = set()
    for t2, _ in n.target_ports():
        cand = n.with_edges([e for e in n.edges if e[0] != s] + [(s, t2)])
        if t2 != t and is_correct_naive(cand):
            expected.add(cand)
    assert set(rewire_moves(n)) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_moves_are_correct_and_keep_sort_edges(sampler, seed):
    s = sampler(seed, unit_prob=0.4, max_type_leaves=6, max_gens=2)
    n = translate(s.term(4), s.sig)
    for m in rewire_moves(n):
        assert m != n
        assert is_correct_naive(m)
        assert _sort_edges(m) == _sort_edges(n)
        assert len(set(m.edges) ^ set(n.edges)) == 2


def test_reflexive(example):
    n = translate(parse_term("beta . (id y * (alpha -o id y))", example.signature), example.signature)
    assert nets_equal(n, n)


def test_beta_sides_differ_as_nets(lam):
    sig = lam.signature
    lhs = translate(parse_term("app . (lam * id x)", sig), sig)
    assert not nets_equal(lhs, translate(Eval(x, x), sig))


def test_interchange_equal(example):
    assert nets_equal(*_interchange(example.signature))


def test_arity_mismatch():
    with pytest.raises(NetError):
        nets_equal(identity_net(x), identity_net(Tensor(x, x)))


def test_stats_are_reported():
    n = structural_net(Lunit(Tensor(x, x)))
    stats = SearchStats()
    assert nets_equal(n, rewire_moves(n)[0], stats)
    assert stats.visited >= 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_orbit_properties(sampler, seed):
    s = sampler(seed, unit_prob=0.4, max_type_leaves=6, max_gens=2)
    rng = random.Random(seed)
    n = translate(s.term(4), s.sig)
    orbit = rewiring_orbit(n)
    f, g, h = (rng.choice(orbit) for _ in range(3))
    assert nets_equal(f, g) and nets_equal(g, f)
    assert nets_equal(f, h) and nets_equal(g, h)
    perm = list(range(len(f.support)))
    rng.shuffle(perm)
    assert nets_equal(relabel(f, dict(enumerate(perm))), g)
    assert nets_equal(compose(identity_net(f.dom), f), compose(identity_net(g.dom), g))
    assert nets_equal(tensor(f, identity_net(Unit())), tensor(g, identity_net(Unit())))
    if isinstance(f.dom, Tensor):
        assert nets_equal(curry(f), curry(g))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_symmetric_on_random_pairs(sampler, seed):
    s = sampler(seed, unit_prob=0.4, max_type_leaves=6, max_gens=2)
    t = s.term(4)
    a, _ = infer_type(t, s.sig)
    for _ in range(10):
        u = s.term_from(a, 4)
        if infer_type(u, s.sig) == infer_type(t, s.sig):
            f, g = translate(t, s.sig), translate(u, s.sig)
            assert nets_equal(f, g) == nets_equal(g, f)
            break


# -- modulo a theory -------------------------------------------------------------------


def test_beta_at_depth_one(lam):
    sig = lam.signature
    t1, t2 = parse_term("app . (lam * id x)", sig), parse_term("eval x x", sig)
    v = theory_equal_bounded(t1, t2, lam, 1)
    assert isinstance(v, Equal) and v.equation_names == ["beta"]
    assert v.trace[0].forward
    assert isinstance(theory_equal_bounded(t1, t2, lam, 0), NotFoundWithinBound)


def test_backward_step_is_marked(lam):
    sig = lam.signature
    v = theory_equal_bounded(parse_term("eval x x", sig), parse_term("app . (lam * id x)", sig), lam, 1)
    assert v.equation_names == ["beta"] and not v.trace[0].forward


def test_monoid_left_unit(monoid):
    sig = monoid.signature
    v = theory_equal_bounded(parse_term("m . (e * id x)", sig), parse_term("lunit x", sig), monoid, 1)
    assert isinstance(v, Equal) and v.equation_names == ["left_unit"]


def test_reflexivity_at_depth_zero(lam):
    t = Gen("lam")
    assert theory_equal_bounded(t, t, lam, 0) == Equal(())


def test_equal_up_to_structure_without_rewriting(monoid):
    sig = monoid.signature
    t1 = parse_term("m . (m * id x) . assoc x x x", sig)
    t2 = parse_term("(m . (m * id x)) . assoc x x x . id (x * (x * x))", sig)
    assert theory_equal_bounded(t1, t2, monoid, 0) == Equal(())


def test_two_steps(monoid):
    sig = monoid.signature
    t1 = parse_term("m . ((m . (e * id x)) * (m . (id x * e)))", sig)
    t2 = parse_term("m . (lunit x * runit x)", sig)
    assert isinstance(theory_equal_bounded(t1, t2, monoid, 1), NotFoundWithinBound)
    v = theory_equal_bounded(t1, t2, monoid, 2)
    assert isinstance(v, Equal)
    assert sorted(v.equation_names) == ["left_unit", "right_unit"]
    assert v.trace[0].before == t1 and v.trace[-1].after == t2


def test_commutativity_is_not_found(monoid):
    sig = monoid.signature
    v = theory_equal_bounded(parse_term("m", sig), parse_term("m . sym x x", sig), monoid, 2)
    assert isinstance(v, NotFoundWithinBound) and v.depth == 2 and v.explored >= 2


def test_type_mismatch(monoid):
    with pytest.raises(TermTypeError):
        theory_equal_bounded(Gen("m"), Gen("e"), monoid, 1)


def test_rewrites_inside_chains_and_tensors(monoid):
    sig = monoid.signature
    t = normalize(parse_term("id x * (m . (e * id x)) . id (x * (I * x))", sig))
    names = {name for name, _, _ in one_step(t, monoid)}
    assert "left_unit" in names


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_empty_theory_agrees_with_nets(sampler, seed):
    s = sampler(seed, unit_prob=0.3, max_type_leaves=6, max_gens=2)
    th = Theory(s.sig, ())
    t = s.term(4)
    a, b = infer_type(t, s.sig)
    candidates = [Comp(Id(b), t)] + [s.term_from(a, 3) for _ in range(5)]
    for u in candidates:
        if infer_type(u, s.sig) != (a, b):
            continue
        same = nets_equal(translate(t, s.sig), translate(u, s.sig))
        assert isinstance(theory_equal_bounded(t, u, th, 2), Equal) == same
