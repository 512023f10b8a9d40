from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from defw.algebra import AlgebraContext, Element, enumerate_basis, apply_rho, make_monomial
from defw.errors import ValidationError
from defw.textio import element_from_json, element_to_json, format_element, parse_element


def test_odd_generators_anticommute(P):
    assert P("h[1,1]*h[1,0]") == -P("h[1,0]*h[1,1]")
    assert P("h[1,2]*h[1,2]") == 0


def test_even_generators_commute(P):
    assert P("c[1,2]*c[1,0]") == P("c[1,0]*c[1,2]")
    assert P("c[1,1]^2") == P("c[1,1]*c[1,1]")


def test_koszul_sign_through_even_factor(P):
    assert P("h[1,1]*c[1,0]*h[1,0]") == -P("h[1,0]*h[1,1]*c[1,0]")


def _brute_count(q, r, degree, order):
    """Count monomials by listing subsets of h's and multisets of c's directly."""
    max_ord = order if r is None else min(order, r)
    hs = [(i, a) for i in range(1, q + 1) for a in range(max_ord + 1)]
    cs = [(i, b) for i in range(1, q + 1) for b in range(max_ord + 1)]
    n = 0
    for nh in range(0, degree + 1):
        if (degree - nh) % 2:
            continue
        nc = (degree - nh) // 2
        for hsub in combinations(hs, nh):
            for cmul in combinations_with_replacement(cs, nc):
                if sum(a for _, a in hsub) + sum(b for _, b in cmul) == order:
                    n += 1
    return n


@pytest.mark.parametrize("q,r,degree,order", [(1, None, 6, 5), (1, 2, 5, 3), (2, None, 4, 2), (2, 1, 5, 2),
                                              (1, None, 0, 0), (3, None, 3, 1)])
def test_basis_count_matches_brute_force(q, r, degree, order):
    assert len(enumerate_basis(AlgebraContext(q, r), degree, order)) == _brute_count(q, r, degree, order)


def test_generator_order_overflow_rejected():
    with pytest.raises(ValidationError):
        parse_element("h[1,3]", AlgebraContext(1, 2))
    with pytest.raises(ValidationError):
        parse_element("c[2,0]", AlgebraContext(1))


def test_context_mismatch_rejected(P):
    other = parse_element("h[1,0]", AlgebraContext(1, 3))
    with pytest.raises(ValidationError):
        P("h[1,0]") + other


def test_rho_drops_last_index():
    ctx2 = AlgebraContext(2)
    x = parse_element("h[1,0]*c[1,0] + h[2,0]*c[1,0] + c[2,1]", ctx2)
    y = apply_rho(x, AlgebraContext(1))
    assert format_element(y) == "h[1,0]*c[1,0]"


def test_make_monomial_sign(ctx1):
    assert make_monomial([(1, 1), (1, 0)], [], ctx1) == -make_monomial([(1, 0), (1, 1)], [], ctx1)


_term = st.tuples(
    st.fractions(min_value=-20, max_value=20, max_denominator=9),
    st.lists(st.integers(0, 3), max_size=3, unique=True),
    st.lists(st.integers(0, 3), max_size=3),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(_term, max_size=4))
def test_text_and_json_round_trip(terms):
    ctx = AlgebraContext(1)
    x = Element.zero(ctx)
    for coeff, hs, cs in terms:
        x = x + make_monomial([(1, a) for a in hs], [(1, b) for b in cs], ctx).scale(coeff)
    assert parse_element(format_element(x), ctx) == x
    assert element_from_json(element_to_json(x), ctx) == x


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=3), st.lists(st.integers(0, 3), max_size=3),
       st.lists(st.integers(0, 3), min_size=1, max_size=3), st.lists(st.integers(0, 3), max_size=3))
def test_graded_commutativity(h1, c1, h2, c2):
    ctx = AlgebraContext(1)
    a = make_monomial([(1, i) for i in set(h1)], [(1, i) for i in c1], ctx)
    b = make_monomial([(1, i) for i in set(h2)], [(1, i) for i in c2], ctx)
    sign = (-1) ** (len(set(h1)) * len(set(h2)))
    assert a * b == (b * a).scale(sign)


def test_fraction_coefficients_exact(P):
    x = P("(1/3)*h[1,0] + (2/3)*h[1,0]")
    assert x == P("h[1,0]")
    assert x.coefficient(next(iter(x.terms))) == Fraction(1)
