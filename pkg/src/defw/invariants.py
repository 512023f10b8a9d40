"""Invariant polynomials of the block Toeplitz group S^r.

An element of s^r is a block lower-triangular Toeplitz matrix; reading
its first block column gives a truncated matrix polynomial
X(t) = A_0 + A_1 t + ... + A_r t^r, and products of blocks are products
of polynomials mod t^{r+1}.  The traces C'_{k,l} = tr Y_l(k) of the blocks
of X^k carry a transcendental factor (-1/2pi)^k that is kept as an
exponent tag so everything stays rational.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Sequence

from .errors import ValidationError

Matrix = tuple  # tuple[tuple[Fraction, ...], ...]


# ---------------------------------------------------------------- small dense matrices


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def mat_zero(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((Fraction(0),) * m for _ in range(n))


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, k) -> Matrix:
    k = Fraction(k)
    return tuple(tuple(k * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def mat_trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def mat_inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over Q."""
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValidationError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_det(a: Matrix) -> Fraction:
    n = len(a)
    m = [list(row) for row in a]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


# ---------------------------------------------------------------- truncated matrix polynomials


@dataclass(frozen=True)
class TruncPolyMatrix:
    """A_0 + A_1 t + ... + A_r t^r with q x q rational A_i, arithmetic mod t^{r+1}."""

    q: int
    r: int
    coeffs: tuple  # tuple[Matrix, ...] of length r + 1

    def __post_init__(self):
        if self.q < 1 or self.r < 0:
            raise ValidationError("need q >= 1 and r >= 0")
        if len(self.coeffs) != self.r + 1:
            raise ValidationError(f"expected {self.r + 1} coefficient matrices, got {len(self.coeffs)}")
        for a in self.coeffs:
            if len(a) != self.q or any(len(row) != self.q for row in a):
                raise ValidationError("coefficient matrices must be q x q")

    @classmethod
    def from_lists(cls, coeffs: Sequence[Sequence[Sequence]]) -> TruncPolyMatrix:
        ms = tuple(mat(a) for a in coeffs)
        return cls(len(ms[0]), len(ms) - 1, ms)

    @classmethod
    def identity(cls, q: int, r: int) -> TruncPolyMatrix:
        return cls(q, r, (mat_identity(q),) + tuple(mat_zero(q) for _ in range(r)))

    @classmethod
    def zero(cls, q: int, r: int) -> TruncPolyMatrix:
        return cls(q, r, tuple(mat_zero(q) for _ in range(r + 1)))

    def _check(self, other: TruncPolyMatrix):
        if (self.q, self.r) != (other.q, other.r):
            raise ValidationError("shape mismatch between truncated matrix polynomials")

    def __add__(self, other: TruncPolyMatrix) -> TruncPolyMatrix:
        self._check(other)
        return TruncPolyMatrix(self.q, self.r, tuple(mat_add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TruncPolyMatrix) -> TruncPolyMatrix:
        self._check(other)
        return TruncPolyMatrix(self.q, self.r, tuple(mat_sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k) -> TruncPolyMatrix:
        return TruncPolyMatrix(self.q, self.r, tuple(mat_scale(a, k) for a in self.coeffs))

    def __mul__(self, other: TruncPolyMatrix) -> TruncPolyMatrix:
        self._check(other)
        out = []
        for n in range(self.r + 1):
            acc = mat_zero(self.q)
            for j in range(n + 1):
                acc = mat_add(acc, mat_mul(self.coeffs[j], other.coeffs[n - j]))
            out.append(acc)
        return TruncPolyMatrix(self.q, self.r, tuple(out))

    def bracket(self, other: TruncPolyMatrix) -> TruncPolyMatrix:
        return self * other - other * self

    @property
    def invertible(self) -> bool:
        return mat_det(self.coeffs[0]) != 0

    def inverse(self) -> TruncPolyMatrix:
        """Inverse mod t^{r+1}: B_0 = A_0^{-1}, B_n = -A_0^{-1} sum_{j>=1} A_j B_{n-j}."""
        if not self.invertible:
            raise ValidationError("A_0 is singular; not an element of GL_q(R[t])_r")
        a0inv = mat_inverse(self.coeffs[0])
        bs = [a0inv]
        for n in range(1, self.r + 1):
            acc = mat_zero(self.q)
            for j in range(1, n + 1):
                acc = mat_add(acc, mat_mul(self.coeffs[j], bs[n - j]))
            bs.append(mat_scale(mat_mul(a0inv, acc), -1))
        return TruncPolyMatrix(self.q, self.r, tuple(bs))

    def power(self, k: int) -> TruncPolyMatrix:
        if k < 0:
            raise ValidationError("negative powers are not supported")
        out = TruncPolyMatrix.identity(self.q, self.r)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self, g: TruncPolyMatrix) -> TruncPolyMatrix:
        """g X g^{-1}."""
        return g * self * g.inverse()

    def trace_coeffs(self) -> tuple[Fraction, ...]:
        return tuple(mat_trace(a) for a in self.coeffs)


def to_block(x: TruncPolyMatrix) -> Matrix:
    """The (r+1)q square block lower-triangular Toeplitz matrix with blocks A_{i-j}."""
    q, r = x.q, x.r
    n = (r + 1) * q
    rows = []
    for bi in range(r + 1):
        for ii in range(q):
            row = []
            for bj in range(r + 1):
                for jj in range(q):
                    row.append(x.coeffs[bi - bj][ii][jj] if bi >= bj else Fraction(0))
            rows.append(tuple(row))
    assert len(rows) == n
    return tuple(rows)


def _block(b: Matrix, q: int, bi: int, bj: int) -> Matrix:
    return tuple(tuple(b[bi * q + i][bj * q + j] for j in range(q)) for i in range(q))


def from_block(b: Matrix, q: int) -> TruncPolyMatrix:
    """Inverse of :func:`to_block`; rejects anything that is not block lower-triangular Toeplitz."""
    n = len(b)
    if q < 1 or n % q or any(len(row) != n for row in b):
        raise ValidationError(f"a {n}x? matrix is not made of {q}x{q} blocks")
    r = n // q - 1
    coeffs = tuple(_block(b, q, l, 0) for l in range(r + 1))
    for bi in range(r + 1):
        for bj in range(r + 1):
            want = coeffs[bi - bj] if bi >= bj else mat_zero(q)
            if _block(b, q, bi, bj) != want:
                raise ValidationError(f"block ({bi},{bj}) breaks the lower-triangular Toeplitz shape")
    return TruncPolyMatrix(q, r, coeffs)


def power_blocks(x: TruncPolyMatrix, k: int) -> tuple[Matrix, ...]:
    """Y_0(k), ..., Y_r(k): the blocks of X^k."""
    return x.power(k).coeffs


# ---------------------------------------------------------------- exact values with a pi tag


@dataclass(frozen=True)
class ScaledInvariantValue:
    """rational_part * (-1/2pi)^pi_exponent."""

    rational_part: Fraction
    pi_exponent: int

    def __add__(self, other: ScaledInvariantValue) -> ScaledInvariantValue:
        if not self.rational_part:
            return other
        if not other.rational_part:
            return self
        if self.pi_exponent != other.pi_exponent:
            raise ValidationError("cannot add values of different (-1/2pi) weight")
        return ScaledInvariantValue(self.rational_part + other.rational_part, self.pi_exponent)

    def __mul__(self, other):
        if isinstance(other, ScaledInvariantValue):
            return ScaledInvariantValue(self.rational_part * other.rational_part,
                                        self.pi_exponent + other.pi_exponent)
        return ScaledInvariantValue(self.rational_part * Fraction(other), self.pi_exponent)

    __rmul__ = __mul__

    def __str__(self):
        return f"{self.rational_part} * (-1/2pi)^{self.pi_exponent}"

    def to_json(self) -> dict:
        v = Fraction(self.rational_part)
        return {"rational_part": {"num": str(v.numerator), "den": str(v.denominator)},
                "pi_exponent": self.pi_exponent}


def C_kl(x: TruncPolyMatrix, k: int, l: int) -> ScaledInvariantValue:
    """(1/k!) (-1/2pi)^k tr Y_l(k)."""
    return ScaledInvariantValue(Cprime_kl(x, k, l).rational_part / factorial(k), k)


def Cprime_kl(x: TruncPolyMatrix, k: int, l: int) -> ScaledInvariantValue:
    if not 0 <= l <= x.r:
        raise ValidationError(f"need 0 <= l <= r={x.r}, got {l}")
    if k < 0:
        raise ValidationError("k must be non-negative")
    return ScaledInvariantValue(mat_trace(power_blocks(x, k)[l]), k)


# ---------------------------------------------------------------- formal polynomials in x_i^(m)


Var = tuple  # (i, m) standing for x_i^(m)
Mono = tuple  # sorted tuple of ((i, m), exponent)


def _mono_mul(a: Mono, b: Mono) -> Mono:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class FormalPolynomial:
    """Polynomial over Q in the free variables x_i^(m)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Mono, Fraction] = {m: Fraction(v) for m, v in (terms or {}).items() if v}

    @classmethod
    def var(cls, i: int, m: int = 0) -> FormalPolynomial:
        return cls({(((i, m), 1),): 1})

    @classmethod
    def const(cls, v) -> FormalPolynomial:
        return cls({(): v})

    def __add__(self, other: FormalPolynomial) -> FormalPolynomial:
        out = dict(self.terms)
        for m, v in other.terms.items():
            out[m] = out.get(m, 0) + v
        return FormalPolynomial(out)

    def __sub__(self, other: FormalPolynomial) -> FormalPolynomial:
        return self + other.scale(-1)

    def scale(self, k) -> FormalPolynomial:
        k = Fraction(k)
        return FormalPolynomial({m: v * k for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FormalPolynomial):
            return self.scale(other)
        out: dict[Mono, Fraction] = {}
        for a, u in self.terms.items():
            for b, v in other.terms.items():
                m = _mono_mul(a, b)
                out[m] = out.get(m, 0) + u * v
        return FormalPolynomial(out)

    def __eq__(self, other):
        return isinstance(other, FormalPolynomial) and self.terms == other.terms

    def delta(self) -> FormalPolynomial:
        """The derivation x_i^(m) -> x_i^(m+1)."""
        out: dict[Mono, Fraction] = {}
        for mono, v in self.terms.items():
            for idx, ((i, m), e) in enumerate(mono):
                rest = mono[:idx] + (((i, m), e - 1),) + mono[idx + 1:] if e > 1 else mono[:idx] + mono[idx + 1:]
                new = _mono_mul(rest, (((i, m + 1), 1),))
                out[new] = out.get(new, 0) + v * e
        return FormalPolynomial(out)

    def delta_power(self, l: int) -> FormalPolynomial:
        p = self
        for _ in range(l):
            p = p.delta()
        return p

    def weight(self) -> set[int]:
        """Set of weighted degrees sum(i * exponent) over the terms."""
        return {sum(i * e for (i, _m), e in mono) for mono in self.terms}

    def evaluate(self, values) -> Fraction:
        """``values(i, m)`` (or a mapping keyed by (i, m)) gives x_i^(m)."""
        get = values if callable(values) else (lambda i, m: values[(i, m)])
        total = Fraction(0)
        for mono, v in self.terms.items():
            term = v
            for (i, m), e in mono:
                term *= Fraction(get(i, m)) ** e
            total += term
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            v = self.terms[mono]
            body = "*".join(f"x{i}^({m})" + (f"^{e}" if e > 1 else "") for (i, m), e in mono) or "1"
            parts.append(f"{v}*{body}")
        return " + ".join(parts)


def newton_phi(k: int) -> FormalPolynomial:
    """phi_k with e_k = phi_k(p_1, ..., p_k) (Newton: n e_n = sum (-1)^{i-1} e_{n-i} p_i)."""
    if k < 0:
        raise ValidationError("k must be non-negative")
    es = [FormalPolynomial.const(1)]
    for n in range(1, k + 1):
        acc = FormalPolynomial()
        for i in range(1, n + 1):
            acc = acc + (es[n - i] * FormalPolynomial.var(i)).scale((-1) ** (i - 1))
        es.append(acc.scale(Fraction(1, n)))
    return es[k]


NORMALIZATIONS = ("literal", "derivative")


def c_kl(x: TruncPolyMatrix, k: int, l: int, normalization: str = "literal") -> ScaledInvariantValue:
    """delta^l phi_k evaluated at x_i^(m) = C'_{i,m}(X).

    ``normalization="derivative"`` substitutes m! C'_{i,m} instead, which makes
    c_{k,l} the l-th t-derivative at 0 of the k-th Chern polynomial of X(t);
    both agree for l <= 1.
    """
    if not 1 <= k <= x.q:
        raise ValidationError(f"need 1 <= k <= q={x.q}, got {k}")
    if not 0 <= l <= x.r:
        raise ValidationError(f"need 0 <= l <= r={x.r}, got {l}")
    if normalization not in NORMALIZATIONS:
        raise ValidationError(f"unknown normalization {normalization!r}")
    traces = {i: x.power(i).trace_coeffs() for i in range(1, k + 1)}
    scale = (lambda m: factorial(m)) if normalization == "derivative" else (lambda m: 1)
    poly = newton_phi(k).delta_power(l)
    return ScaledInvariantValue(poly.evaluate(lambda i, m: scale(m) * traces[i][m]), k)


def chern_coefficients(x: TruncPolyMatrix, k: int) -> tuple[Fraction, ...]:
    """t-coefficients of e_k(X(t)) = sum of k x k principal minors, over R[t]/t^{r+1}.

    Independent of the trace route: determinants by permutation expansion.
    The k-th Chern polynomial of X(t) is (-1/2pi)^k times this.
    """
    from itertools import combinations

    r = x.r
    entry = lambda i, j: tuple(a[i][j] for a in x.coeffs)

    def pmul(a, b):
        return tuple(sum((a[j] * b[n - j] for j in range(n + 1)), Fraction(0)) for n in range(r + 1))

    total = [Fraction(0)] * (r + 1)
    for rows in combinations(range(x.q), k):
        for perm in permutations(range(k)):
            sign = _perm_sign(perm)
            term = (Fraction(1),) + (Fraction(0),) * r
            for a, b in enumerate(perm):
                term = pmul(term, entry(rows[a], rows[b]))
            for n in range(r + 1):
                total[n] += sign * term[n]
    return tuple(total)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for s in range(len(perm)):
        if seen[s]:
            continue
        j, n = s, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        if n % 2 == 0:
            sign = -sign
    return sign


def chern_polynomial(a: Matrix, k: int) -> ScaledInvariantValue:
    """c_k(A): coefficient of lambda^{q-k} in det(lambda I - A/2pi)."""
    x = TruncPolyMatrix(len(a), 0, (mat(a),))
    return ScaledInvariantValue(chern_coefficients(x, k)[0], k)


def tau_coefficients(x: TruncPolyMatrix, k: int) -> tuple[Fraction, ...]:
    """t-coefficients of tr(X(t)^k) from the block matrix power (independent of power_blocks)."""
    b = to_block(x)
    p = mat_identity(len(b))
    for _ in range(k):
        p = mat_mul(p, b)
    return from_block(p, x.q).trace_coeffs()


def check_ad_invariance(k: int, l: int, x: TruncPolyMatrix, g: TruncPolyMatrix,
                        normalization: str = "literal") -> bool:
    if not g.invertible:
        raise ValidationError("conjugating element must have invertible A_0")
    return c_kl(x.conjugate(g), k, l, normalization) == c_kl(x, k, l, normalization)


# ---------------------------------------------------------------- random inputs


def random_fraction(rng: random.Random, bound: int = 10) -> Fraction:
    num = rng.randint(-bound, bound)
    den = rng.randint(1, bound)
    return Fraction(num, den)


def random_trunc(rng: random.Random, q: int, r: int, bound: int = 10) -> TruncPolyMatrix:
    return TruncPolyMatrix(q, r, tuple(
        tuple(tuple(random_fraction(rng, bound) for _ in range(q)) for _ in range(q)) for _ in range(r + 1)))


def random_invertible(rng: random.Random, q: int, r: int, bound: int = 10) -> TruncPolyMatrix:
    while True:
        g = random_trunc(rng, q, r, bound)
        if g.invertible:
            return g
