import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weid import (
    AmbientMismatchError,
    Monomial,
    MonomialIdeal,
    colon,
    contains,
    ideal_sum,
    intersect,
    localize,
    membership,
    minimalize,
    power,
    product,
    radical,
    restrict,
)

from conftest import ideal, ideal_pairs, ideals


def box(I: MonomialIdeal, extra: int = 1):
    caps = [c + extra for c in I.max_exponents()] if I.gens else [extra] * I.nvars
    return itertools.product(*(range(c + 1) for c in caps))


def in_ideal(vec, gens):
    return any(all(a <= b for a, b in zip(g, vec)) for g in gens)


# -- monomials -------------------------------------------------------------


def test_monomial_is_sparse_and_canonical():
    m = Monomial({"a": 2, "x": 0, "b": 1})
    assert m.exponents == {"a": 2, "b": 1}
    assert m.degree() == 3 and m.deg("x") == 0
    assert Monomial() == Monomial({}) and Monomial().degree() == 0
    assert m * Monomial(a=1) == Monomial(a=3, b=1)
    assert Monomial(a=1).divides(m) and not m.divides(Monomial(a=1))


def test_monomial_rejects_negative_exponent():
    with pytest.raises(ValueError):
        Monomial(a=-1)


def test_vector_outside_ambient():
    with pytest.raises(AmbientMismatchError):
        Monomial(z=1).vector(["a", "b"])


# -- minimalize and membership ------------------------------------------


@pytest.mark.parametrize(
    "gens, expected",
    [
        ([{"x": 1}, {"x": 2, "y": 1}], [{"x": 1}]),
        ([{"x": 1, "y": 1}, {"y": 1, "z": 1}, {"x": 1, "z": 1}], [{"x": 1, "y": 1}, {"y": 1, "z": 1}, {"x": 1, "z": 1}]),
        ([{"a": 2, "x": 2}, {"a": 1, "b": 1}, {"a": 2, "b": 1}], [{"a": 2, "x": 2}, {"a": 1, "b": 1}]),
    ],
)
def test_minimalize_examples(gens, expected):
    I = minimalize(gens, "abxyz")
    assert set(I.monomials()) == {Monomial(g) for g in expected}


def test_minimalize_unknown_variable():
    with pytest.raises(AmbientMismatchError):
        minimalize([{"q": 1}], "ab")


def test_membership_examples():
    assert membership({"a": 2, "b": 2}, ideal("ab", {"a": 1, "b": 1}))
    assert membership({"a": 1, "b": 1}, ideal("abxy", {"a": 2, "x": 2}, {"a": 1, "b": 1}, {"b": 2, "y": 2}))
    assert not membership({"a": 1, "b": 1, "x": 1}, ideal("abx", {"a": 2, "x": 2}, {"a": 1, "b": 2}))


def test_zero_and_unit_ideals():
    Z, U = MonomialIdeal.zero("ab"), MonomialIdeal.unit("ab")
    assert Z.is_zero() and U.is_unit() and not U.is_proper()
    assert {} in U and {"a": 5} not in Z
    I = ideal("ab", {"a": 1})
    assert intersect(I, U) == I and intersect(I, Z) == Z
    assert ideal_sum(I, Z) == I and ideal_sum(I, U) == U
    assert product(I, Z) == Z and product(I, U) == I
    assert power(I, 0) == U
    assert colon(I, {"a": 1}) == U and radical(Z) == Z


# -- intersect / power / colon / radical ---------------------------------


def test_intersect_examples():
    ab, ay, bx = ideal("abxy", {"a": 1}, {"b": 1}), ideal("abxy", {"a": 1}, {"y": 1}), ideal("abxy", {"b": 1}, {"x": 1})
    assert intersect(ab, ay) == ideal("abxy", {"a": 1}, {"b": 1, "y": 1})
    assert intersect(ab, ay, bx) == ideal("abxy", {"a": 1, "b": 1}, {"a": 1, "x": 1}, {"b": 1, "y": 1})
    P = ideal("abxy", {"a": 1, "b": 1}, {"a": 2}, {"b": 2})
    Q1 = ideal("abxy", {"a": 1}, {"y": 2})
    Q2 = ideal("abxy", {"b": 1}, {"x": 2})
    assert intersect(P, Q1, Q2) == ideal("abxy", {"a": 2, "x": 2}, {"a": 1, "b": 1}, {"b": 2, "y": 2})


def test_power_examples():
    assert power(ideal("xy", {"x": 1, "y": 1}), 2) == ideal("xy", {"x": 2, "y": 2})
    I = ideal("abxy", {"a": 1, "b": 1}, {"a": 1, "x": 1}, {"b": 1, "y": 1})
    sq = power(I, 2)
    # independent: every pairwise product, then divisibility-minimal ones by brute force
    prods = {tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in I.gens}
    minimal = {p for p in prods if not any(q != p and all(x <= y for x, y in zip(q, p)) for q in prods)}
    assert sq.gens == frozenset(minimal)
    for m in ({"a": 2, "b": 1, "x": 1}, {"a": 1, "b": 2, "y": 1}, {"a": 2, "b": 2}):
        assert Monomial(m) in sq.monomials()
    assert power(I, 1) == I


def test_colon_examples():
    I = ideal("abxy", {"a": 2, "x": 2}, {"a": 1, "b": 1}, {"b": 2, "y": 2})
    assert colon(I, {"a": 1}) == ideal("abxy", {"a": 1, "x": 2}, {"b": 1})
    assert colon(I, {}) == I
    assert colon(ideal("xy", {"x": 2, "y": 2}), {"x": 5}) == ideal("xy", {"y": 2})


def test_radical_examples():
    I = ideal("abxy", {"a": 2, "x": 2}, {"a": 1, "b": 1}, {"b": 2, "y": 2})
    assert radical(I) == ideal("abxy", {"a": 1, "x": 1}, {"a": 1, "b": 1}, {"b": 1, "y": 1})
    assert radical(ideal("x", {"x": 3})) == ideal("x", {"x": 1})
    assert radical(radical(I)) == radical(I)


def test_restrict_examples():
    I = ideal("abxy", {"a": 1, "x": 1}, {"a": 1, "b": 1}, {"b": 1, "y": 1})
    assert restrict(I, "abx") == ideal("abxy", {"a": 1, "x": 1}, {"a": 1, "b": 1})
    assert restrict(power(I, 2), "abx") == power(restrict(I, "abx"), 2)
    assert restrict(I, I.variables) == I


def test_localize_examples():
    p, k, q = 3, 1, 2
    I = ideal("abxy", {"a": p, "x": p}, {"a": k, "b": k}, {"b": q, "y": q})
    assert localize(I, "y") == ideal("abxy", {"a": p, "x": p}, {"a": k, "b": k}, {"b": q})
    k, m, p, q, r = 1, 2, 3, 2, 4
    J = ideal(
        "abcxyz",
        {"a": k, "b": k}, {"b": m, "c": m}, {"a": p, "x": p}, {"b": q, "y": q}, {"c": r, "z": r},
    )
    assert localize(J, "cy") == ideal("abcxyz", {"a": k, "b": k}, {"b": m}, {"a": p, "x": p}, {"z": r})
    assert localize(J, "") == J


def test_ambient_mismatch_between_ideals():
    with pytest.raises(AmbientMismatchError):
        intersect(ideal("ab", {"a": 1}), ideal("ba", {"a": 1}))


def test_json_roundtrip_and_minimalization_on_load():
    data = {"variables": ["a", "b"], "generators": [{"a": 1}, {"a": 2, "b": 1}]}
    I = MonomialIdeal.from_json(data)
    assert I.to_json() == {"variables": ["a", "b"], "generators": [{"a": 1}]}
    assert MonomialIdeal.from_json(I.to_json()) == I


def test_large_exponents_are_exact():
    big = 2**70
    I = ideal("xy", {"x": big, "y": 1})
    assert {"x": big, "y": 1} in I and {"x": big - 1, "y": 5} not in I
    assert colon(I, {"x": big - 3}) == ideal("xy", {"x": 3, "y": 1})


# -- properties ---------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(ideal_pairs(max_vars=3, max_exp=2), st.integers(1, 2))
def test_power_of_intersection_inside_intersection_of_powers(pair, n):
    I, J = pair
    assert contains(intersect(power(I, n), power(J, n)), power(intersect(I, J), n))


@settings(max_examples=60, deadline=None)
@given(ideals(max_vars=4), st.integers(1, 3), st.data())
def test_restrict_and_localize_commute_with_power(I, n, data):
    W = data.draw(st.sets(st.sampled_from(I.variables)))
    assert restrict(power(I, n), W) == power(restrict(I, W), n)
    assert localize(power(I, n), W) == power(localize(I, W), n)


@settings(max_examples=80, deadline=None)
@given(ideals(), st.data())
def test_colon_properties(I, data):
    vec = st.tuples(*[st.integers(0, 3)] * I.nvars)
    f = Monomial.from_vector(I.variables, data.draw(vec))
    g = Monomial.from_vector(I.variables, data.draw(vec))
    assert contains(colon(I, f), I)
    assert colon(I, f * g) == colon(colon(I, f), g)
    assert membership(f, I) == colon(I, f).is_unit()


@settings(max_examples=60, deadline=None)
@given(ideals(max_vars=3), st.randoms(use_true_random=False))
def test_minimalize_idempotent_and_order_free(I, rnd):
    mons = I.monomials() + [m * Monomial({I.variables[0]: 1}) for m in I.monomials()]
    shuffled = list(mons)
    rnd.shuffle(shuffled)
    assert minimalize(mons, I.variables) == minimalize(shuffled, I.variables) == I
    assert minimalize(I.monomials(), I.variables) == I


@settings(max_examples=60, deadline=None)
@given(ideal_pairs(max_vars=3, max_exp=2))
def test_operations_against_brute_force_membership(pair):
    I, J = pair
    both = intersect(I, J)
    S = ideal_sum(I, J)
    P = product(I, J)
    R = radical(I)
    for v in box(ideal_sum(P, I), extra=1):
        inI, inJ = in_ideal(v, I.gens), in_ideal(v, J.gens)
        assert in_ideal(v, both.gens) == (inI and inJ)
        assert in_ideal(v, S.gens) == (inI or inJ)
        # f is in sqrt(I) iff some power of f lies in I
        big = tuple(3 * x for x in v)
        assert in_ideal(v, R.gens) == in_ideal(big, I.gens)
    # product: generated by pairwise products
    prods = {tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens}
    assert P == MonomialIdeal(I.variables, prods)


def test_dense_and_sparse_views_agree():
    I = ideal("abc", {"a": 2, "c": 1}, {"b": 3})
    assert I.vector({"c": 4}) == (0, 0, 4)
    assert I.index("b") == 1
    assert I.max_exponents() == (2, 3, 1)
    assert I <= ideal("abc", {"a": 1}, {"b": 1})
