import random

import pytest
from hypothesis import strategies as st

from weid import MonomialIdeal
from weid.graphs import WeightedGraph


def path3(k: int, p: int, q: int) -> WeightedGraph:
    """x - a - b - y with w(ab)=k, w(ax)=p, w(by)=q."""
    return WeightedGraph("abxy", [("a", "b", k), ("a", "x", p), ("b", "y", q)])


def pqr_tree(k: int, m: int, p: int, q: int, r: int) -> WeightedGraph:
    return WeightedGraph(
        "abcxyz",
        [("a", "b", k), ("b", "c", m), ("a", "x", p), ("b", "y", q), ("c", "z", r)],
    )


def ideal(variables: str, *gens: dict) -> MonomialIdeal:
    return MonomialIdeal.from_monomials(list(variables), list(gens))


@st.composite
def ideals(draw, max_vars=4, max_gens=4, max_exp=3, proper=True):
    n = draw(st.integers(1, max_vars))
    variables = [f"v{i}" for i in range(n)]
    vec = st.tuples(*[st.integers(0, max_exp)] * n)
    if proper:
        vec = vec.filter(any)
    gens = draw(st.lists(vec, min_size=1, max_size=max_gens))
    return MonomialIdeal(variables, gens)


@st.composite
def ideal_pairs(draw, **kw):
    I = draw(ideals(**kw))
    gens = draw(st.lists(st.tuples(*[st.integers(0, 3)] * I.nvars).filter(any), min_size=1, max_size=4))
    return I, MonomialIdeal(I.variables, gens)


def random_proper_ideal(rng: random.Random, max_vars=5, max_gens=5, max_exp=3) -> MonomialIdeal:
    n = rng.randint(1, max_vars)
    variables = [f"v{i}" for i in range(n)]
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        while True:
            g = tuple(rng.randint(0, max_exp) for _ in range(n))
            if any(g):
                break
        gens.append(g)
    return MonomialIdeal(variables, gens)


@pytest.fixture
def rng():
    return random.Random(20240501)
