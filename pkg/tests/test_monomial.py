import pytest
from hypothesis import given, settings, strategies as st

from sdepth.monomial import (MAX_EXPONENT, IrreducibleIdeal, Monomial, MonomialIdeal, PrimeIdeal,
                             contract, equigenerated_degree, ideal_of_irreducible, ideal_of_prime,
                             intersect, intersect_all, is_squarefree, minimalize, product, radical,
                             raise_exponent, support)


def mono(*e):
    return Monomial(tuple(e))


def ideal(n, *rows):
    return MonomialIdeal.from_exponents(n, rows)


def prime(n, *vars_):
    return ideal_of_prime(PrimeIdeal(n, frozenset(vars_)))


def test_minimalize_drops_multiples():
    assert minimalize({mono(1, 0), mono(1, 1)}) == {mono(1, 0)}


def test_minimalize_keeps_incomparable():
    gens = {mono(1, 0, 1, 0), mono(0, 1, 0, 1)}
    assert minimalize(gens) == gens


def test_minimalize_keeps_all_bipartite_products():
    gens = {Monomial.from_support(4, {i, j}) for i in (1, 2) for j in (3, 4)}
    assert minimalize(gens) == gens


def test_minimalize_rejects_empty_and_mixed():
    with pytest.raises(ValueError):
        minimalize([])
    with pytest.raises(ValueError):
        minimalize([mono(1), mono(1, 0)])


def test_monomial_validation_and_text():
    with pytest.raises(ValueError):
        mono(-1, 0)
    with pytest.raises(OverflowError):
        mono(MAX_EXPONENT + 1)
    with pytest.raises(OverflowError):
        mono(MAX_EXPONENT) * mono(1)
    assert str(mono(1, 0, 2)) == "x1*x3^2"
    assert support(mono(1, 0, 2)) == {1, 3}


def test_ideal_rejects_unit_and_canonical_order():
    with pytest.raises(ValueError):
        ideal(2, (0, 0))
    i = ideal(3, (0, 0, 1), (1, 1, 0), (1, 0, 0), (1, 0, 1))
    assert [g.exponents for g in i.gens] == [(1, 0, 0), (0, 0, 1)]
    assert mono(2, 0, 0) in i and mono(0, 1, 0) not in i


def test_intersect_bipartite_edge_ideal():
    i = intersect(prime(6, 1, 2), prime(6, 3, 4, 5, 6))
    assert len(i) == 8
    assert all(g.degree == 2 and g.support() & {1, 2} for g in i.gens)


def test_intersect_idempotent_and_containment():
    i = ideal(3, (1, 1, 0), (0, 0, 2))
    assert intersect(i, i) == i
    assert intersect(ideal(1, (2,)), ideal(1, (1,))) == ideal(1, (2,))
    with pytest.raises(ValueError):
        intersect(i, ideal(2, (1, 0)))


def test_product_examples():
    assert product(prime(4, 1, 2), prime(4, 3, 4)) == intersect(prime(4, 1, 2), prime(4, 3, 4))
    assert product(ideal(1, (1,)), ideal(1, (1,))) == ideal(1, (2,))
    assert len(product(prime(6, 1, 2), prime(6, 3, 4, 5, 6))) == 8


def test_radical_examples():
    assert radical(ideal(2, (2, 1))) == ideal(2, (1, 1))
    sq = prime(3, 1, 2)
    assert radical(sq) == sq
    left = ideal(4, (2, 0, 0, 0), (1, 1, 0, 0), (0, 2, 0, 0))
    right = ideal(4, (0, 0, 2, 0), (0, 0, 1, 1), (0, 0, 0, 2))
    assert radical(intersect(left, right)) == intersect(prime(4, 1, 2), prime(4, 3, 4))


def test_raise_exponent_examples():
    i = ideal(3, (1, 1, 0), (0, 0, 1))
    assert raise_exponent(i, 1, 1) == ideal(3, (2, 1, 0), (0, 0, 1))
    assert raise_exponent(raise_exponent(i, 1, 1), 1, 2) == ideal(3, (3, 1, 0), (0, 0, 1))


def test_raise_exponent_preconditions():
    with pytest.raises(ValueError):
        raise_exponent(ideal(2, (1, 0), (2, 1)), 1, 1)  # exponent 2 is neither 0 nor a
    with pytest.raises(ValueError):
        raise_exponent(ideal(2, (1, 0), (0, 1)), 1, 2)  # nothing has exponent a
    with pytest.raises(ValueError):
        raise_exponent(ideal(2, (1, 0)), 1, 1)  # every generator has it (r = m)


def test_squarefree_and_equigenerated():
    assert not is_squarefree(ideal(2, (2, 1)))
    assert is_squarefree(prime(3, 1, 3))
    kp = intersect_all([prime(5, 1, 2), prime(5, 3), prime(5, 4, 5)])
    assert equigenerated_degree(kp) == 3
    assert equigenerated_degree(ideal(2, (1, 0), (0, 2))) is None


def test_irreducible_and_prime_types():
    q = IrreducibleIdeal(4, {1: 2, 3: 1})
    assert q.support == {1, 3} and q.height == 2
    assert q.radical() == PrimeIdeal(4, frozenset({1, 3}))
    assert ideal_of_irreducible(q) == ideal(4, (2, 0, 0, 0), (0, 0, 1, 0))
    with pytest.raises(ValueError):
        IrreducibleIdeal(3, {1: 0})
    with pytest.raises(ValueError):
        PrimeIdeal(3, frozenset({4}))


def test_contract():
    i = ideal(3, (1, 1, 0), (0, 0, 1))
    assert contract(i) == ideal(2, (1, 1))
    with pytest.raises(ValueError):
        contract(ideal(2, (0, 1)))


# --- properties ----------------------------------------------------------

def ideals(n=4, max_exp=2):
    row = st.tuples(*[st.integers(0, max_exp)] * n).filter(any)
    return st.lists(row, min_size=1, max_size=4).map(lambda rows: MonomialIdeal.from_exponents(n, rows))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 2)] * 3), min_size=1, max_size=6))
def test_minimalize_idempotent_and_order_free(rows):
    gens = [Monomial(r) for r in rows]
    once = minimalize(gens)
    assert minimalize(once) == once
    assert minimalize(reversed(gens)) == once


@settings(max_examples=60, deadline=None)
@given(ideals(), ideals(), ideals())
def test_intersect_product_algebra(a, b, c):
    assert intersect(a, b) == intersect(b, a)
    assert product(a, b) == product(b, a)
    assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))
    assert product(product(a, b), c) == product(a, product(b, c))
    inter = intersect(a, b)
    assert all(g in inter for g in product(a, b).gens)


@settings(max_examples=60, deadline=None)
@given(ideals(), ideals())
def test_radical_properties(a, b):
    assert radical(radical(a)) == radical(a)
    assert radical(intersect(a, b)) == intersect(radical(a), radical(b))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3))
def test_product_equals_intersection_on_disjoint_supports(p, q):
    a = ideal_of_prime(PrimeIdeal(p + q, frozenset(range(1, p + 1))))
    b = ideal_of_prime(PrimeIdeal(p + q, frozenset(range(p + 1, p + q + 1))))
    assert product(a, b) == intersect(a, b)
