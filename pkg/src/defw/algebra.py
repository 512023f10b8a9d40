"""Free graded-commutative algebra on h_{i,(a)} (odd) and c_{i,(b)} (even).

Monomials are stored sign-free in canonical form: H-factors strictly
increasing, then C-factors weakly increasing, under the generator order
(kind, index, order) with H < C.  Signs live in the rational coefficients
of an :class:`Element`.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import ValidationError

H = 0
C = 1

UNBOUNDED = None


class Variant(Enum):
    FREE = "free"
    W = "W"
    W_PRIME = "Wprime"
    W_PLUS = "Wplus"


@dataclass(frozen=True)
class AlgebraContext:
    """Codimension ``q``, jet order ``r`` (``None`` means unbounded) and quotient variant."""

    q: int
    r: int | None = UNBOUNDED
    variant: Variant = Variant.W

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 1:
            raise ValidationError(f"q must be a positive integer, got {self.q!r}")
        if self.r is not None and (not isinstance(self.r, int) or self.r < 1):
            raise ValidationError(f"r must be a positive integer or UNBOUNDED, got {self.r!r}")
        if not isinstance(self.variant, Variant):
            raise ValidationError(f"unknown variant {self.variant!r}")

    @property
    def bounded(self) -> bool:
        return self.r is not None

    def with_variant(self, variant: Variant) -> AlgebraContext:
        return AlgebraContext(self.q, self.r, variant)

    def with_q(self, q: int) -> AlgebraContext:
        return AlgebraContext(q, self.r, self.variant)

    def compatible(self, other: AlgebraContext) -> bool:
        # Elements live in the free algebra; the variant only matters for quotient operations.
        return self.q == other.q and self.r == other.r

    def quotient_variant(self) -> Variant:
        # D^r W_1 and D^r W_1' coincide.
        if self.q == 1 and self.variant is Variant.W_PRIME:
            return Variant.W
        return self.variant

    def __str__(self):
        r = "inf" if self.r is None else str(self.r)
        return f"q={self.q}, r={r}, variant={self.variant.value}"


class Generator(NamedTuple):
    kind: int
    index: int
    order: int

    @property
    def degree(self) -> int:
        return 1 if self.kind == H else 2

    @property
    def norm(self) -> int:
        if self.kind == H and self.order == 0:
            return 0
        return max(self.index - self.order, 0)

    def __str__(self):
        return f"{'h' if self.kind == H else 'c'}[{self.index},{self.order}]"


def h(i: int, a: int) -> Generator:
    return Generator(H, i, a)


def c(i: int, b: int) -> Generator:
    return Generator(C, i, b)


class Monomial(NamedTuple):
    hs: tuple[Generator, ...] = ()
    cs: tuple[Generator, ...] = ()

    @property
    def factors(self) -> tuple[Generator, ...]:
        return self.hs + self.cs

    @property
    def degree(self) -> int:
        return len(self.hs) + 2 * len(self.cs)

    @property
    def order(self) -> int:
        return sum(g.order for g in self.hs) + sum(g.order for g in self.cs)

    @property
    def length(self) -> int:
        return len(self.hs) + len(self.cs)

    @property
    def type(self) -> tuple[int, int]:
        return (len(self.hs), len(self.cs))

    @property
    def norm(self) -> int:
        return sum(g.norm for g in self.hs) + sum(g.norm for g in self.cs)

    def __str__(self):
        if not self.hs and not self.cs:
            return "1"
        return "*".join(str(g) for g in self.factors)


ONE = Monomial()


class Gradings(NamedTuple):
    degree: int
    order: int
    length: int
    type: tuple[int, int]
    norm: int


def gradings(m: Monomial) -> Gradings:
    return Gradings(m.degree, m.order, m.length, m.type, m.norm)


def merge_sign(left: tuple[Generator, ...], right: tuple[Generator, ...]):
    """Sorted merge of two sorted odd-factor tuples; returns (sign, merged) or (0, None)."""
    if not left:
        return 1, right
    if not right:
        return 1, left
    out = []
    i = j = 0
    inversions = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a == b:
            return 0, None
        if a < b:
            out.append(a)
            i += 1
        else:
            # b jumps over the remaining len(left) - i odd factors
            inversions += len(left) - i
            out.append(b)
            j += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return (-1 if inversions % 2 else 1), tuple(out)


@lru_cache(maxsize=None)
def monomial_product(a: Monomial, b: Monomial):
    """Product of canonical monomials as (sign, monomial); sign 0 means the product vanishes."""
    sign, hs = merge_sign(a.hs, b.hs)
    if sign == 0:
        return 0, None
    cs = tuple(sorted(a.cs + b.cs)) if a.cs and b.cs else (a.cs or b.cs)
    return sign, Monomial(hs, cs)


def sort_odd(factors: Iterable[Generator]):
    """Canonicalize a sequence of odd generators: (permutation sign, sorted tuple) or (0, None)."""
    items = list(factors)
    if len(set(items)) != len(items):
        return 0, None
    inversions = 0
    for x in range(len(items)):
        for y in range(x + 1, len(items)):
            if items[x] > items[y]:
                inversions += 1
    return (-1 if inversions % 2 else 1), tuple(sorted(items))


class Element:
    """Sparse rational linear combination of canonical monomials.

    Treated as immutable; arithmetic always returns new elements.
    """

    __slots__ = ("terms", "ctx")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None, ctx: AlgebraContext | None = None):
        if ctx is None:
            raise ValidationError("an Element needs an AlgebraContext")
        clean = {}
        if terms:
            for m, v in terms.items():
                if v:
                    clean[m] = Fraction(v)
        self.terms: dict[Monomial, Fraction] = clean
        self.ctx = ctx

    @classmethod
    def _raw(cls, terms: dict, ctx: AlgebraContext) -> Element:
        # terms already clean (no zeros, Fraction values)
        e = object.__new__(cls)
        e.terms = terms
        e.ctx = ctx
        return e

    @classmethod
    def zero(cls, ctx: AlgebraContext) -> Element:
        return cls._raw({}, ctx)

    @classmethod
    def one(cls, ctx: AlgebraContext) -> Element:
        return cls._raw({ONE: Fraction(1)}, ctx)

    @classmethod
    def from_monomial(cls, m: Monomial, ctx: AlgebraContext, coeff=1) -> Element:
        return cls({m: Fraction(coeff)}, ctx)

    def _check(self, other: Element):
        if not self.ctx.compatible(other.ctx):
            raise ValidationError(f"context mismatch: ({self.ctx}) vs ({other.ctx})")

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ctx.compatible(other.ctx) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: Element) -> Element:
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for m, v in other.terms.items():
            s = out.get(m, 0) + v
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element._raw(out, self.ctx)

    __radd__ = __add__

    def __neg__(self) -> Element:
        return Element._raw({m: -v for m, v in self.terms.items()}, self.ctx)

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def scale(self, k) -> Element:
        k = Fraction(k)
        if not k:
            return Element.zero(self.ctx)
        return Element._raw({m: v * k for m, v in self.terms.items()}, self.ctx)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms)

    def homogeneous_parts(self) -> dict[tuple[int, int], Element]:
        """Split into (degree, order) components."""
        parts: dict[tuple[int, int], dict] = {}
        for m, v in self.terms.items():
            parts.setdefault((m.degree, m.order), {})[m] = v
        return {k: Element._raw(t, self.ctx) for k, t in sorted(parts.items())}

    def bidegree(self) -> tuple[int, int] | None:
        keys = {(m.degree, m.order) for m in self.terms}
        if len(keys) == 1:
            return keys.pop()
        return None

    @property
    def norm(self) -> int:
        """Maximum of monomial norms (0 for the zero element)."""
        return max((m.norm for m in self.terms), default=0)

    def __str__(self):
        from .textio import format_element

        return format_element(self)

    def __repr__(self):
        return f"Element({self})"


def _validate_generator(g: Generator, ctx: AlgebraContext):
    if not 1 <= g.index <= ctx.q:
        raise ValidationError(f"index {g.index} of {g} outside [1, {ctx.q}]")
    if g.order < 0:
        raise ValidationError(f"negative order in {g}")
    if ctx.r is not None and g.order > ctx.r:
        raise ValidationError(f"order {g.order} of {g} exceeds r={ctx.r}")


def make_monomial(h_list, c_list, ctx: AlgebraContext) -> Element:
    """Canonical signed monomial from (index, order) pairs; zero if an h repeats."""
    hs = [Generator(H, i, a) for i, a in h_list]
    cs = [Generator(C, i, b) for i, b in c_list]
    for g in hs + cs:
        _validate_generator(g, ctx)
    sign, hs_sorted = sort_odd(hs)
    if sign == 0:
        return Element.zero(ctx)
    return Element._raw({Monomial(hs_sorted, tuple(sorted(cs))): Fraction(sign)}, ctx)


def generator(g: Generator, ctx: AlgebraContext) -> Element:
    _validate_generator(g, ctx)
    if g.kind == H:
        return Element._raw({Monomial((g,), ()): Fraction(1)}, ctx)
    return Element._raw({Monomial((), (g,)): Fraction(1)}, ctx)


def multiply(a: Element, b: Element) -> Element:
    a._check(b)
    out: dict[Monomial, Fraction] = {}
    for ma, va in a.terms.items():
        for mb, vb in b.terms.items():
            sign, m = monomial_product(ma, mb)
            if not sign:
                continue
            s = out.get(m, 0) + (va * vb if sign > 0 else -va * vb)
            if s:
                out[m] = s
            else:
                del out[m]
    return Element._raw(out, a.ctx)


def product(elements: Iterable[Element], ctx: AlgebraContext) -> Element:
    out = Element.one(ctx)
    for e in elements:
        out = multiply(out, e)
    return out


def canonicalize(x: Element) -> Element:
    """Rebuild an element through the canonical constructor (identity on valid input)."""
    out = Element.zero(x.ctx)
    for m, v in x.terms.items():
        out = out + make_monomial([(g.index, g.order) for g in m.hs], [(g.index, g.order) for g in m.cs], x.ctx).scale(v)
    return out


def _max_gen_order(ctx: AlgebraContext, order: int) -> int:
    return order if ctx.r is None else min(order, ctx.r)


@lru_cache(maxsize=None)
def _enumerate(q: int, r: int | None, degree: int, order: int) -> tuple[Monomial, ...]:
    top = order if r is None else min(order, r)
    hgens = [Generator(H, i, a) for i in range(1, q + 1) for a in range(top + 1)]
    cgens = [Generator(C, i, a) for i in range(1, q + 1) for a in range(top + 1)]
    hgens.sort()
    cgens.sort()
    out = []

    def pick_h(start, need, budget, acc):
        if need == 0:
            yield tuple(acc), budget
            return
        for k in range(start, len(hgens)):
            g = hgens[k]
            if g.order <= budget:
                acc.append(g)
                yield from pick_h(k + 1, need - 1, budget - g.order, acc)
                acc.pop()

    def pick_c(start, need, budget, acc):
        if need == 0:
            if budget == 0:
                yield tuple(acc)
            return
        for k in range(start, len(cgens)):
            g = cgens[k]
            if g.order <= budget:
                acc.append(g)
                yield from pick_c(k, need - 1, budget - g.order, acc)
                acc.pop()

    for nc in range(degree // 2 + 1):
        nh = degree - 2 * nc
        if nh > len(hgens):
            continue
        for hs, rest in pick_h(0, nh, order, []):
            for cs in pick_c(0, nc, rest, []):
                out.append(Monomial(hs, cs))
    out.sort()
    return tuple(out)


def enumerate_basis(ctx: AlgebraContext, degree: int, order: int) -> tuple[Monomial, ...]:
    """All canonical monomials of the free algebra with the given degree and total order."""
    if degree < 0 or order < 0:
        return ()
    return _enumerate(ctx.q, ctx.r, degree, order)


def apply_rho(x: Element, ctx_to: AlgebraContext | None = None) -> Element:
    """Restriction to codimension q: kill every generator of index q+1."""
    q1 = x.ctx.q
    if q1 < 2:
        raise ValidationError("restriction needs a source context of codimension >= 2")
    target = ctx_to or x.ctx.with_q(q1 - 1)
    if target.q != q1 - 1 or target.r != x.ctx.r:
        raise ValidationError(f"restriction target must have q={q1 - 1}, r={x.ctx.r}")
    out = {}
    for m, v in x.terms.items():
        if any(g.index == q1 for g in m.factors):
            continue
        out[m] = v
    return Element._raw(out, target)
