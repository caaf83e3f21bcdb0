import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weid import MonomialIdeal, Monomial, colon, contains, intersect, localize, power, radical
from weid.decomposition import (
    DecompositionError,
    associated_primes,
    dim_quotient,
    height,
    irreducible_decomposition,
    is_unmixed,
    minimal_primes,
    primary_decomposition,
    symbolic_power,
)
from weid.graphs import WeightedGraph, edge_ideal, minimal_vertex_covers, pendant_matching
from weid.harness import generate

from conftest import ideal, ideals, path3, pqr_tree


def prime(variables, names):
    return MonomialIdeal.from_monomials(variables, [{v: 1} for v in names])


def brute_force_ass(I: MonomialIdeal) -> set:
    """Primes of the form I : f, over f in the exponent box."""
    out = set()
    for v in itertools.product(*(range(c + 1) for c in I.max_exponents())):
        J = colon(I, Monomial.from_vector(I.variables, v))
        if J.is_proper() and all(sum(g) == 1 for g in J.gens):
            out.add(frozenset(I.variables[g.index(1)] for g in J.gens))
    return out


# -- examples --------------------------------------------------------------


def test_irreducible_path():
    I = ideal("abxy", {"a": 1, "b": 1}, {"a": 1, "x": 1}, {"b": 1, "y": 1})
    comps = {frozenset(c.as_dict().items()) for c in irreducible_decomposition(I)}
    assert comps == {
        frozenset({("a", 1), ("b", 1)}),
        frozenset({("a", 1), ("y", 1)}),
        frozenset({("b", 1), ("x", 1)}),
    }


def test_irreducible_principal():
    comps = irreducible_decomposition(ideal("xy", {"x": 2, "y": 2}))
    assert sorted(sorted(c.as_dict().items()) for c in comps) == [[("x", 2)], [("y", 2)]]


def test_irreducible_weighted_path_reconstructs():
    I = ideal("abxy", {"a": 2, "x": 2}, {"a": 1, "b": 1}, {"b": 2, "y": 2})
    comps = irreducible_decomposition(I)
    assert intersect(*(c.ideal() for c in comps)) == I
    for c in comps:
        assert all(sum(1 for e in g if e) == 1 for g in c.ideal().gens)


def test_primary_weighted_path():
    I = ideal("abxy", {"a": 2, "x": 2}, {"a": 1, "b": 1}, {"b": 2, "y": 2})
    D = primary_decomposition(I)
    got = {c.prime: c.ideal for c in D.components}
    assert got == {
        frozenset("ab"): ideal("abxy", {"a": 1, "b": 1}, {"a": 2}, {"b": 2}),
        frozenset("ay"): ideal("abxy", {"a": 1}, {"y": 2}),
        frozenset("bx"): ideal("abxy", {"b": 1}, {"x": 2}),
    }
    assert D.irredundant


@pytest.mark.parametrize("k, m, p, r", [(1, 2, 3, 2), (1, 2, 2, 4), (2, 3, 3, 5)])
def test_primary_pqr_localization(k, m, p, r):
    J = ideal("abcxyz", {"a": k, "b": k}, {"b": m}, {"a": p, "x": p}, {"z": r})
    got = {c.prime: c.ideal for c in primary_decomposition(J).components}
    assert got == {
        frozenset("abz"): ideal("abcxyz", {"a": k, "b": k}, {"a": p}, {"b": m}, {"z": r}),
        frozenset("bxz"): ideal("abcxyz", {"b": k}, {"x": p}, {"z": r}),
    }


def test_primary_of_a_variable():
    D = primary_decomposition(ideal("x", {"x": 1}))
    assert len(D.components) == 1 and D.components[0].height == 1


def test_decomposition_rejects_unit_and_zero():
    with pytest.raises(DecompositionError):
        irreducible_decomposition(MonomialIdeal.unit("ab"))
    with pytest.raises(DecompositionError):
        primary_decomposition(MonomialIdeal.zero("ab"))


def test_associated_primes_examples():
    I = ideal("abxy", {"a": 1, "x": 1}, {"a": 1, "b": 1}, {"b": 1, "y": 1})
    assert associated_primes(I) == {frozenset("ab"), frozenset("ay"), frozenset("bx")}
    assert associated_primes(ideal("x", {"x": 2})) == {frozenset("x")}
    assert associated_primes(power(I, 2)) == brute_force_ass(power(I, 2))


def test_unmixed_examples():
    assert is_unmixed(ideal("abxy", {"a": 1, "x": 1}, {"a": 1, "b": 1}, {"b": 1, "y": 1}))
    assert is_unmixed(ideal("xyz", {"x": 1, "y": 1}, {"z": 1}))
    assert is_unmixed(ideal("xyz", {"x": 1}, {"y": 1, "z": 1}))
    assert not is_unmixed(ideal("xyz", {"x": 1, "y": 1}, {"x": 1, "z": 1}))


def test_unmixedness_of_fourth_power_against_depth_oracle():
    from weid.cm import depth_monomial

    I4 = power(edge_ideal(pqr_tree(1, 1, 2, 2, 2)), 4)
    verdict = depth_monomial(I4, spot_checks=0)
    assert not verdict.is_cm
    # brute force over colon primes, restricted to the primes found by decomposition
    assert is_unmixed(I4) == (len({len(p) for p in associated_primes(I4)}) == 1)


def test_symbolic_power_examples():
    I = edge_ideal(path3(1, 2, 2))
    assert symbolic_power(I, 2) == power(I, 2)
    assert symbolic_power(I, 1) == I
    J = edge_ideal(path3(1, 1, 1))
    S = symbolic_power(J, 2)
    assert contains(S, power(J, 2))
    # squarefree: the symbolic power is the intersection of powers of the minimal primes
    oracle = intersect(*(power(prime(J.variables, p), 2) for p in minimal_primes(J)))
    assert S == oracle


def test_height_and_dim():
    I = ideal("abxy", {"a": 1, "x": 1}, {"a": 1, "b": 1}, {"b": 1, "y": 1})
    assert height(I) == 2 and dim_quotient(I) == 2
    assert height(ideal("x", {"x": 1})) == 1
    assert height(edge_ideal(pqr_tree(1, 2, 2, 4, 4))) == 3


def test_minimal_primes_ignore_embedded():
    I = ideal("xy", {"x": 2}, {"x": 1, "y": 1})
    assert associated_primes(I) == {frozenset("x"), frozenset("xy")}
    assert minimal_primes(I) == {frozenset("x")}
    assert not is_unmixed(I)


# -- properties -------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(ideals(max_vars=4, max_gens=4, max_exp=3))
def test_reconstruction_and_ass_match_brute_force(I):
    D = primary_decomposition(I)
    assert intersect(*(c.ideal for c in D.components)) == I
    assert len(set(D.primes)) == len(D.primes)
    for c in D.components:
        assert radical(c.ideal) == prime(I.variables, c.prime)
    assert associated_primes(I) == brute_force_ass(I)
    # irredundant: dropping any component changes the intersection
    if len(D.components) > 1:
        for i in range(len(D.components)):
            rest = [c.ideal for j, c in enumerate(D.components) if j != i]
            assert intersect(*rest) != I


@settings(max_examples=50, deadline=None)
@given(ideals(max_vars=4, max_gens=3, max_exp=2), st.integers(1, 3))
def test_power_inside_symbolic_power(I, n):
    S = symbolic_power(I, n)
    P = power(I, n)
    assert contains(S, P)
    if is_unmixed(I) and is_unmixed(P) and associated_primes(I) == minimal_primes(I):
        assert S == P


@settings(max_examples=40, deadline=None)
@given(ideals(max_vars=4, max_gens=4, max_exp=1), st.integers(1, 3))
def test_symbolic_power_of_squarefree_matches_prime_powers(I, n):
    if not I.is_proper():
        return
    oracle = intersect(*(power(prime(I.variables, p), n) for p in minimal_primes(I)))
    assert symbolic_power(I, n) == oracle


def _random_weighted_graph(rnd: random.Random, nv: int) -> WeightedGraph:
    V = [f"v{i}" for i in range(nv)]
    E = [(u, v, rnd.randint(1, 3)) for u, v in itertools.combinations(V, 2) if rnd.random() < 0.5]
    if not E:
        E = [(V[0], V[1], 1)]
    return WeightedGraph(V, E)


@pytest.mark.parametrize("seed", range(25))
def test_ass_of_radical_is_minimal_vertex_covers(seed):
    rnd = random.Random(seed)
    G = _random_weighted_graph(rnd, rnd.randint(2, 7))
    assert associated_primes(radical(edge_ideal(G))) == set(minimal_vertex_covers(G))


@pytest.mark.parametrize("G", list(generate("tree", 3, 3, seed=7, samples=12)) + list(generate("tree", 4, 3, seed=8, samples=8)))
@pytest.mark.parametrize("n", [1, 2])
def test_pendant_lemmas_on_random_trees(G, n):
    I = power(edge_ideal(G), n)
    if not is_unmixed(I):
        return
    for y in sorted(G.leaves()):
        (x,) = G.neighbors(y)
        assert all(G.weight(x, y) >= G.weight(x, z) for z in G.neighbors(x))
        H = G.delete([x])
        if H.num_edges():
            assert is_unmixed(power(edge_ideal(H), n))
