from __future__ import annotations

import random
from fractions import Fraction

import pytest

from defw.algebra import AlgebraContext, Element, Variant
from defw.checks import random_monomial
from defw.cohomology import (F_lambda, class_delta, class_mul, class_of, class_sigma, cohomology, delta_sigma,
                             eigen_dims_on_cohomology, eigenvalues, lambda_mk, p1_coefficients, projector_p,
                             projector_p_prime, type_filtered_cohomology)
from defw.derivations import derivation
from defw.errors import UnsupportedContextError, ValidationError
from defw.quotients import is_in_ideal


def test_order_zero_is_classical_gv(ctx1):
    # W_1 at order 0 is Lambda[h0] (x) R[c0]/(c0^2): cohomology in degrees 0 and 3 only
    dims = [cohomology(ctx1, d, 0).dimension for d in range(8)]
    assert dims == [1, 0, 0, 1, 0, 0, 0, 0]
    assert [str(b) for b in cohomology(ctx1, 3, 0).basis] == ["h[1,0]*c[1,0]"]


@pytest.mark.parametrize("q", [1, 2])
def test_free_algebra_is_acyclic(q):
    ctx = AlgebraContext(q, variant=Variant.FREE)
    for o in range(3):
        for d in range(1, 6):
            assert cohomology(ctx, d, o).dimension == 0


def test_representative_independence(P, ctx1):
    d = derivation("d", ctx1)
    dgv = P("h[1,0]*c[1,1] + h[1,1]*c[1,0]")
    H31 = cohomology(ctx1, 3, 1)
    assert H31.cls(dgv + d(P("(3/2)*h[1,0]*h[1,1]"))) == H31.cls(dgv)
    flk = P("h[1,0]*h[1,1]*c[1,0]")
    H41 = cohomology(ctx1, 4, 1)
    assert H41.cls(flk + P("5*c[1,0]*c[1,1]")) == H41.cls(flk)
    assert not H41.cls(flk).is_zero


def test_non_cocycle_rejected(P, ctx1):
    with pytest.raises(ValidationError):
        cohomology(ctx1, 1, 0).coordinates(P("h[1,0]"))


def test_type_filter_guards(ctx1):
    with pytest.raises(UnsupportedContextError):
        type_filtered_cohomology(AlgebraContext(2), 3, 0, (1, 1))
    with pytest.raises(ValidationError):
        type_filtered_cohomology(ctx1, 4, 0, (1, 1))


def test_f_lambda_needs_unbounded_r():
    with pytest.raises(UnsupportedContextError):
        F_lambda(AlgebraContext(1, 4), Fraction(0), 3, 1)


def test_eigenvalue_formula():
    assert eigenvalues(3) == [0, 2, 3]
    assert lambda_mk(2, 2) == 1
    assert [lambda_mk(m, 5) for m in range(1, 6)] == [0, 4, 7, 9, 10]


def test_p1_coefficients_by_hand():
    # (1 - ds/2)(1 - ds/3) = 1 - (1/2) d s + (1/6) d^2 s^2 using (ds)^2 = d^2 s^2 + 2 ds at order 3
    assert p1_coefficients(2) == [1, -1]
    assert p1_coefficients(3) == [1, Fraction(-1, 2), Fraction(1, 6)]


def _random_order_k(rng, ctx, k):
    while True:
        x = random_monomial(rng, ctx, max_order=k)
        x = Element({m: c for m, c in x if m.order == k}, ctx)
        if x:
            return x


@pytest.mark.parametrize("q", [1, 2])
def test_projectors_agree_with_lagrange_interpolation(q):
    """p_{m,k} = prod_{m' != m} (ds - lam_m') / (lam_m - lam_m') on order-k elements."""
    ctx = AlgebraContext(q)
    ds = delta_sigma(ctx)
    rng = random.Random(11 + q)
    for _ in range(40):
        k = rng.randint(1, 5)
        x = _random_order_k(rng, ctx, k)
        total = Element.zero(ctx)
        for m in range(1, k + 1):
            y = x
            for mm in range(1, k + 1):
                if mm != m:
                    lam, lam2 = lambda_mk(m, k), lambda_mk(mm, k)
                    y = (ds(y) - y.scale(lam2)).scale(1 / (lam - lam2))
            got = projector_p(m, k, x, reduced=False)
            assert got == y
            total = total + got
        assert total == x


def test_p_prime_is_the_length_split(P):
    x = P("h[1,3]*c[1,1] + h[1,0]*c[1,4] + h[1,2]*c[1,2]")
    sp = derivation("sigma_prime", x.ctx)
    dl = derivation("delta", x.ctx)
    total = Element.zero(x.ctx)
    for i in range(5):
        y = projector_p_prime(i, 4, 2, x, reduced=False)
        total = total + y
        assert dl(sp(y)) == y.scale(2 * i)
    assert total.terms == x.terms
    with pytest.raises(ValidationError):
        projector_p_prime(0, 4, 0, x)


def test_low_order_generators(P, ctx1):
    assert not class_of(P("h[1,0]*h[1,1]*c[1,0]"), 4, 1).is_zero
    assert F_lambda(ctx1, Fraction(0), 4, 1).dimension == 1
    for k in (2, 3, 4):
        assert all(F_lambda(ctx1, Fraction(0), d, k).dimension == 0 for d in range(9))


def test_delta_sigma_eigen_dims_match_f_lambda(ctx1):
    for d, k in [(3, 2), (4, 3), (5, 3), (6, 5)]:
        dims = eigen_dims_on_cohomology(ctx1, d, k)
        for lam in eigenvalues(k):
            assert dims.get(lam, 0) == F_lambda(ctx1, lam, d, k).dimension


def test_product_coefficient_hand_oracle(P, ctx1):
    """delta(GV) delta^4(GV) = 12 [h1 h2 c0 c2], derived by hand.

    delta(GV) - 2 h1 c0 = -d(h0 h1) exactly, and the class of delta^4(GV) is
    represented by 2 h4 c0 + 6 h3 c1 + 6 h2 c2 + 2 h1 c3.  Multiplying out,
    h1 h1 = 0, c0^2 and c0 c1 lie in I, and the only survivor is 2*6 h1 h2 c0 c2.
    """
    d = derivation("d", ctx1)
    delta = derivation("delta", ctx1)
    gv = P("h[1,0]*c[1,0]")
    d1, d4 = delta(gv), delta.power(gv, 4)
    rep1, rep4 = P("2*h[1,1]*c[1,0]"), P("2*h[1,4]*c[1,0] + 6*h[1,3]*c[1,1] + 6*h[1,2]*c[1,2] + 2*h[1,1]*c[1,3]")
    assert d1 - rep1 == -d(P("h[1,0]*h[1,1]"))
    H34 = cohomology(ctx1, 3, 4)
    assert H34.cls(d4) == H34.cls(rep4)
    assert is_in_ideal(rep1 * rep4 - P("12*h[1,1]*h[1,2]*c[1,0]*c[1,2]"))
    prod = class_mul(class_of(d1), class_of(d4))
    assert prod == class_of(P("12*h[1,1]*h[1,2]*c[1,0]*c[1,2]"), 6, 5)
    # the remaining structural claims
    other = class_mul(class_of(delta.power(gv, 2)), class_of(delta.power(gv, 3)))
    assert not prod.is_zero
    assert class_of(other.representative + prod.representative, 6, 5).is_zero
    assert class_sigma(other).is_zero
    assert class_mul(class_of(d1), class_of(delta.power(gv, 3))).is_zero


def test_class_delta_of_gv(P):
    gv = class_of(P("h[1,0]*c[1,0]"))
    assert class_delta(gv) == class_of(P("h[1,0]*c[1,1] + h[1,1]*c[1,0]"))
    with pytest.raises(ValidationError):
        class_sigma(gv)
