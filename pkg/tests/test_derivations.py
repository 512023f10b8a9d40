from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from defw.algebra import AlgebraContext, Element
from defw.checks import random_element
from defw.derivations import derivation
from defw.errors import OrderOverflowError, UnsupportedContextError
from defw.textio import parse_element


def D(name, ctx, **kw):
    return derivation(name, ctx, **kw)


def test_hand_values(P, ctx1):
    assert D("d", ctx1)(P("h[1,0]*c[1,0]")) == P("c[1,0]^2")
    assert D("delta", ctx1)(P("h[1,0]*c[1,0]")) == P("h[1,1]*c[1,0] + h[1,0]*c[1,1]")
    # sigma x_l = l(l-1)/2 x_{l-1};  sigma' x_l = l x_{l-1}
    assert D("sigma", ctx1)(P("h[1,3]*c[1,2]")) == P("3*h[1,2]*c[1,2] + h[1,3]*c[1,1]")
    assert D("sigma_prime", ctx1)(P("h[1,3]*c[1,2]")) == P("3*h[1,2]*c[1,2] + 2*h[1,3]*c[1,1]")
    assert D("K", ctx1)(P("c[1,2]")) == P("h[1,3]")
    assert D("L", ctx1)(P("c[1,2]*c[1,0]")) == P("h[1,0]*c[1,2] + h[1,2]*c[1,0]")


def test_d_is_odd(P, ctx1):
    # d(h0 h1) = c0 h1 - h0 c1
    assert D("d", ctx1)(P("h[1,0]*h[1,1]")) == P("h[1,1]*c[1,0] - h[1,0]*c[1,1]")


@pytest.mark.parametrize("n", range(6))
def test_delta_power_is_binomial(P, ctx1, n):
    gv = P("h[1,0]*c[1,0]")
    want = " + ".join(f"{comb(n, j)}*h[1,{j}]*c[1,{n - j}]" for j in range(n + 1))
    assert D("delta", ctx1).power(gv, n) == P(want)


def test_strict_overflow():
    ctx = AlgebraContext(1, 2)
    x = parse_element("h[1,2]", ctx)
    with pytest.raises(OrderOverflowError):
        D("delta", ctx)(x)
    assert D("delta", ctx, strict=False)(x) == 0


def test_L_requires_q1():
    with pytest.raises(UnsupportedContextError):
        derivation("L", AlgebraContext(2))


def _rand(seed, q=1):
    return random_element(random.Random(seed), AlgebraContext(q))


def _bracket(a, b, x):
    return a(b(x)) - b(a(x))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1, 2]))
def test_d_squared_and_commutations(seed, q):
    ctx = AlgebraContext(q)
    x = _rand(seed, q)
    d, delta = D("d", ctx), D("delta", ctx)
    assert d(d(x)) == 0
    assert d(delta(x)) == delta(d(x))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_order_and_length_commutators(seed):
    ctx = AlgebraContext(1)
    x = _rand(seed)
    delta, sigma, sp = D("delta", ctx), D("sigma", ctx), D("sigma_prime", ctx)
    by_order = Element({m: c * m.order for m, c in x}, ctx)
    by_length = Element({m: c * m.length for m, c in x}, ctx)
    assert _bracket(sigma, delta, x) == by_order
    assert _bracket(sp, delta, x) == by_length


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3]))
def test_K_homotopy(seed, q):
    ctx = AlgebraContext(q)
    x = _rand(seed, q)
    K, d, delta = D("K", ctx), D("d", ctx), D("delta", ctx)
    assert K(d(x)) + d(K(x)) == delta(x)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_leibniz(seed, _):
    ctx = AlgebraContext(1)
    a, b = _rand(seed), _rand(seed + 1)
    for name in ("delta", "sigma", "sigma_prime"):
        op = D(name, ctx)
        assert op(a * b) == op(a) * b + a * op(b)
