import pytest

from smcnets.formula import Hom, Tensor, Unit, parse_formula, ports
from smcnets.term import TermTypeError
from smcnets.theory import FIXTURES, load_theory, parse_theory, ty


def test_monoid_fixture(monoid):
    assert monoid.sorts == {"x"}
    assert sorted(monoid.ops) == ["e", "m"]
    assert [eq.name for eq in monoid.equations] == ["assoc_law", "left_unit", "right_unit"]


def test_lambda_fixture(lam):
    assert lam.sorts == {"x"}
    assert len(lam.ops) == 2
    assert [eq.name for eq in lam.equations] == ["beta"]
    assert lam.signature.op("lam").source == parse_formula("x -o x")


def test_equation_type_mismatch_reports_both_arities():
    with pytest.raises(TermTypeError) as info:
        parse_theory("sort x\neq bad : id x = sym x x\n")
    msg = str(info.value)
    assert "line 2" in msg and "x -> x" in msg and "x * x -> x * x" in msg


@pytest.mark.parametrize("text, fragment", [
    ("sort x\nop f : x -> z\n", "unknown sort"),
    ("sort x\nop f : x -> x\nop f : x -> x\n", "duplicate"),
    ("sort x\nsort x\n", "duplicate"),
    ("sort x\neq e1 : g = g\n", "unknown operation"),
    ("sort x\nop f : x -> \n", "line 2"),
    ("sort x\nfrobnicate x\n", "line 2"),
])
def test_theory_errors(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        parse_theory(text)


def test_comments_and_blank_lines():
    th = parse_theory("# a theory\n\nsort x   # the only sort\nop f : x -> x\n")
    assert list(th.ops) == ["f"]


def test_ty_examples(example):
    sig = example.signature
    assert ty([], sig) == Unit()
    assert ty(["alpha"], sig) == parse_formula("x -o x * y")
    assert ty(["alpha", "beta"], sig) == Tensor(parse_formula("x -o x * y"), parse_formula("y * (x -o y) -o y"))


def test_ty_nests_left(example):
    sig = example.signature
    assert ty(["alpha", "beta", "alpha"], sig) == Tensor(ty(["alpha", "beta"], sig), ty(["alpha"], sig))


def test_ty_unknown(example):
    with pytest.raises(KeyError):
        ty(["gamma"], example.signature)


def _signed(f):
    return sorted((p.label, p.positive) for p in ports(f))


@pytest.mark.parametrize("gamma, delta", [(["alpha"], ["beta"]), (["beta", "alpha"], ["alpha", "beta", "beta"])])
def test_ty_port_multisets_add(example, gamma, delta):
    sig = example.signature
    whole = ty(gamma + delta, sig)
    assert _signed(whole) == _signed(Tensor(ty(gamma, sig), ty(delta, sig)))
    assert _signed(whole) == sorted(sum((_signed(ty([n], sig)) for n in gamma + delta), []))


def test_load_by_name_and_path(tmp_path):
    for name in FIXTURES:
        assert load_theory(name) == load_theory(name.removesuffix(".smc"))
    p = tmp_path / "t.smc"
    p.write_text("sort z\n")
    assert load_theory(str(p)).sorts == {"z"}
    with pytest.raises(FileNotFoundError):
        load_theory(str(tmp_path / "missing.smc"))


def test_signature_is_immutable_value(example):
    with pytest.raises(AttributeError):
        example.signature.sorts = frozenset()
    assert isinstance(example.signature.op("alpha").type, Hom)
