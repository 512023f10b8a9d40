from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from defw.errors import ValidationError
from defw.invariants import (C_kl, Cprime_kl, TruncPolyMatrix, c_kl, check_ad_invariance, chern_coefficients,
                             chern_polynomial, from_block, mat_det, mat_mul, mat_trace, newton_phi,
                             random_invertible, random_trunc, tau_coefficients, to_block)


def tp(*mats):
    return TruncPolyMatrix.from_lists([[[F(v) for v in row] for row in m] for m in mats])


def test_chern_of_diagonal_is_elementary_symmetric():
    a = [[F(2), 0, 0], [0, F(3), 0], [0, 0, F(-5)]]
    assert chern_polynomial(a, 1).rational_part == 0
    assert chern_polynomial(a, 2).rational_part == 6 - 10 - 15
    assert chern_polynomial(a, 3).rational_part == -30
    assert chern_polynomial(a, 2).pi_exponent == 2


def test_newton_phi_two():
    # e_2 = (p_1^2 - p_2) / 2
    phi = newton_phi(2)
    assert phi.evaluate(lambda i, m: {1: F(5), 2: F(13)}[i]) == 6


def test_q1_values_by_hand():
    x = tp([[2]], [[3]], [[7]])
    assert Cprime_kl(x, 1, 1).rational_part == 3
    assert c_kl(x, 1, 1).rational_part == 3 and c_kl(x, 1, 1).pi_exponent == 1
    assert c_kl(x, 1, 2).rational_part == 7
    assert c_kl(x, 1, 2, "derivative").rational_part == 14
    # tr X(t)^2 = 4 + 12 t + (9 + 28) t^2
    assert tau_coefficients(x, 2) == (4, 12, 37)
    assert C_kl(x, 2, 2).rational_part == F(37, 2)


def _adj2(a):
    return [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]


def test_c21_is_derivative_of_determinant():
    rng = random.Random(3)
    for _ in range(30):
        x = random_trunc(rng, 2, 1)
        a0, a1 = x.coeffs
        want = mat_trace(mat_mul(_adj2(a0), a1))
        assert c_kl(x, 2, 1).rational_part == want
        assert c_kl(x, 2, 0).rational_part == mat_det(a0)


def test_derivative_normalization_matches_chern_minors():
    from math import factorial

    rng = random.Random(5)
    for q, r in [(2, 2), (3, 3), (3, 2)]:
        x = random_trunc(rng, q, r)
        for k in range(1, q + 1):
            coeffs = chern_coefficients(x, k)
            for l in range(r + 1):
                assert c_kl(x, k, l, "derivative").rational_part == factorial(l) * coeffs[l]
                if l <= 1:
                    assert c_kl(x, k, l).rational_part == coeffs[l]


def test_block_round_trip_and_toeplitz_guard():
    rng = random.Random(9)
    x = random_trunc(rng, 2, 3)
    assert from_block(to_block(x), 2) == x
    b = [list(row) for row in to_block(x)]
    b[2][0] += 1
    with pytest.raises(ValidationError):
        from_block(b, 2)


def test_block_product_is_truncated_product():
    rng = random.Random(10)
    x, y = random_trunc(rng, 2, 2), random_trunc(rng, 2, 2)
    assert from_block(mat_mul(to_block(x), to_block(y)), 2) == x * y


@pytest.mark.parametrize("q,r", [(1, 1), (1, 3), (2, 2), (3, 3), (2, 3)])
def test_ad_invariance(q, r):
    rng = random.Random(q * 10 + r)
    for _ in range(15):
        x, g = random_trunc(rng, q, r), random_invertible(rng, q, r)
        for k in range(1, q + 1):
            for l in range(r + 1):
                assert check_ad_invariance(k, l, x, g)


def test_non_invariant_sanity():
    # a single entry of X is not conjugation invariant; guards against a vacuous check
    x = tp([[1, 2], [3, 4]], [[0, 1], [0, 0]])
    g = tp([[1, 1], [0, 1]], [[0, 0], [0, 0]])
    assert x.conjugate(g) != x


def test_ranges_validated():
    x = tp([[1]], [[1]])
    with pytest.raises(ValidationError):
        c_kl(x, 2, 0)
    with pytest.raises(ValidationError):
        c_kl(x, 1, 2)
    with pytest.raises(ValidationError):
        c_kl(x, 1, 0, "other")
