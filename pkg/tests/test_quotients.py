from __future__ import annotations

import random

import pytest

from defw.algebra import AlgebraContext, Variant
from defw.checks import random_element
from defw.quotients import IdealVariant, congruent, ideal_slice, is_in_ideal, reduce
from defw.textio import parse_element


def test_bott_vanishing_at_q1(P):
    assert is_in_ideal(P("c[1,0]^2"))
    assert is_in_ideal(P("h[1,3]*c[1,0]^2"))
    assert not is_in_ideal(P("h[1,0]*c[1,0]"))
    assert not is_in_ideal(P("c[1,1]^2"))


def test_delta_closure(P):
    # delta(c0^2) = 2 c0 c1 and delta^2(c0^2) = 2 c0 c2 + 2 c1^2
    assert is_in_ideal(P("c[1,0]*c[1,1]"))
    assert is_in_ideal(P("c[1,0]*c[1,2] + c[1,1]^2"))
    assert not is_in_ideal(P("c[1,0]*c[1,2] - c[1,1]^2"))


def test_pivot_reduction(P):
    assert reduce(P("c[1,0]*c[1,2]")) == P("-c[1,1]^2")
    assert congruent(P("h[1,1]*c[1,0]*c[1,2]"), P("-h[1,1]*c[1,1]^2"))


def test_closure_depth_matters(P):
    x = P("c[1,0]*c[1,2]*c[1,2]")
    assert is_in_ideal(x)
    assert not is_in_ideal(x, delta_depth=2)


@pytest.mark.parametrize("ijk", [(i, j, k) for i in range(6) for j in range(i, 6) for k in range(j, 6)
                                 if i + j + k <= 5])
def test_triple_products_vanish(ijk):
    ctx = AlgebraContext(1)
    i, j, k = ijk
    assert is_in_ideal(parse_element(f"c[1,{i}]*c[1,{j}]*c[1,{k}]", ctx))


@pytest.mark.parametrize("q,degree,order", [(1, 4, 3), (1, 6, 4), (2, 4, 2), (2, 5, 2)])
def test_ideal_inclusions(q, degree, order):
    ctx = AlgebraContext(q)
    plus = ideal_slice(IdealVariant.I_PLUS, ctx, degree, order)
    prime = ideal_slice(IdealVariant.I_PRIME, ctx, degree, order)
    full = ideal_slice(IdealVariant.I, ctx, degree, order)
    assert prime.contains_space(plus)
    assert full.contains_space(prime)
    if q == 1:
        assert prime.contains_space(full)


def test_reduce_is_idempotent_and_congruent():
    rng = random.Random(7)
    ctx = AlgebraContext(1)
    for _ in range(100):
        x = random_element(rng, ctx)
        y = reduce(x)
        assert reduce(y) == y
        assert is_in_ideal(x - y)


def test_free_variant_has_no_ideal(P, ctx1):
    x = parse_element("c[1,0]^2", ctx1.with_variant(Variant.FREE))
    assert not is_in_ideal(x)
    assert reduce(x) == x


def test_bounded_r_keeps_truncated_generators():
    ctx = AlgebraContext(1, 2)
    assert is_in_ideal(parse_element("c[1,0]*c[1,2] + c[1,1]^2", ctx))
