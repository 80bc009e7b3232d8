import random

import pytest
from hypothesis import strategies as st

from smcnets.formula import Atom, Hom, Tensor, Unit
from smcnets.sampling import TermSampler
from smcnets.theory import load_theory


@pytest.fixture(scope="session")
def example():
    return load_theory("example.smc")


@pytest.fixture(scope="session")
def monoid():
    return load_theory("monoid.smc")


@pytest.fixture(scope="session")
def lam():
    return load_theory("lambda.smc")


@pytest.fixture(scope="session")
def sampler(example):
    def make(seed, **kw):
        return TermSampler(example.signature, random.Random(seed), **kw)
    return make


def formulas(sorts=("x", "y"), max_leaves=6):
    leaf = st.one_of(st.just(Unit()), st.sampled_from(sorts).map(Atom))
    return st.recursive(
        leaf,
        lambda sub: st.one_of(st.builds(Tensor, sub, sub), st.builds(Hom, sub, sub)),
        max_leaves=max_leaves,
    )
