"""Ideals I, I' and the '+' ideal as finite-dimensional bigraded slices.

A slice is the intersection of an ideal with the (degree, order) piece of
the free algebra, stored as an RREF subspace over the piece's monomial
basis.  Slices are built recursively:

    G[D, O]  = seeds[D, O] + delta(G[D, O-1])           (delta-closure of the seeds)
    I[D, O]  = G[D, O] + sum over generators g of g * I[D - deg g, O - ord g]

which spans exactly {delta^j(seed) * monomial}.  Limiting the closure depth
models the ideal generated by delta^j(seeds) for j <= depth only.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache

from .algebra import C, H, AlgebraContext, Element, Generator, Monomial, Variant, enumerate_basis, monomial_product
from .derivations import derivation
from .linalg import Echelon, Vector


class IdealVariant(Enum):
    I = "I"
    I_PRIME = "I'"
    I_PLUS = "I+"


VARIANT_IDEAL = {
    Variant.W: IdealVariant.I,
    Variant.W_PRIME: IdealVariant.I_PRIME,
    Variant.W_PLUS: IdealVariant.I_PLUS,
    Variant.FREE: None,
}


def ideal_for(ctx: AlgebraContext) -> IdealVariant | None:
    return VARIANT_IDEAL[ctx.quotient_variant()]


@dataclass(frozen=True, eq=False)
class Piece:
    """Ordered monomial basis of one (degree, order) piece, optionally cut to one length."""

    ctx: AlgebraContext
    degree: int
    order: int
    length: int | None = None

    @cached_property
    def ambient(self) -> tuple[Monomial, ...]:
        mons = enumerate_basis(self.ctx, self.degree, self.order)
        if self.length is not None:
            mons = tuple(m for m in mons if m.length == self.length)
        return mons

    @cached_property
    def index(self) -> dict[Monomial, int]:
        return {m: k for k, m in enumerate(self.ambient)}

    def __len__(self):
        return len(self.ambient)

    def vector(self, x: Element) -> Vector:
        idx = self.index
        out = {}
        for m, v in x.terms.items():
            k = idx.get(m)
            if k is None:
                raise KeyError(f"{m} is not in the ({self.degree}, {self.order}) piece")
            out[k] = v
        return out

    def element(self, v: Vector) -> Element:
        amb = self.ambient
        return Element._raw({amb[k]: Fraction(a) for k, a in v.items() if a}, self.ctx)


@lru_cache(maxsize=None)
def piece(ctx: AlgebraContext, degree: int, order: int, length: int | None = None) -> Piece:
    return Piece(ctx, degree, order, length)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """RREF subspace of one piece; pivots index into ``piece.ambient``."""

    piece: Piece
    echelon: Echelon

    @property
    def dim(self) -> int:
        return self.echelon.rank

    @property
    def pivot_columns(self) -> list[int]:
        return self.echelon.pivots

    @property
    def ambient(self) -> tuple[Monomial, ...]:
        return self.piece.ambient

    def rows(self) -> list[Element]:
        return [self.piece.element(r) for r in self.echelon.rows()]

    def contains(self, x: Element) -> bool:
        return self.echelon.contains(self.piece.vector(x))

    def reduce(self, x: Element) -> Element:
        return self.piece.element(self.echelon.reduce(self.piece.vector(x)))

    def contains_space(self, other: SubspaceBasis) -> bool:
        return all(self.contains(r) for r in other.rows())


def _seeds(variant: IdealVariant, q: int, r: int | None, degree: int, order: int) -> list[Monomial]:
    ctx = AlgebraContext(q, r)
    if variant is IdealVariant.I:
        return [m for m in enumerate_basis(ctx, degree, order) if m.norm > q]
    if order != 0:
        return []
    # order-zero pure-C monomials; their norm is the weighted degree j_1 + 2 j_2 + ... + q j_q
    return [m for m in enumerate_basis(ctx, degree, 0) if not m.hs and m.norm > q]


@lru_cache(maxsize=None)
def _closure(variant: IdealVariant, q: int, r: int | None, degree: int, order: int, depth: int | None) -> Echelon:
    ctx = AlgebraContext(q, r)
    pc = piece(ctx, degree, order)
    idx = pc.index
    e = Echelon({idx[m]: Fraction(1)} for m in _seeds(variant, q, r, degree, order))
    if order >= 1 and variant is not IdealVariant.I_PLUS and (depth is None or depth >= 1):
        below = piece(ctx, degree, order - 1)
        prev = _closure(variant, q, r, degree, order - 1, None if depth is None else depth - 1)
        delta = derivation("delta", ctx, strict=False)
        for row in prev.rows():
            e.add(pc.vector(delta(below.element(row))))
    return e


def _generators(q: int, r: int | None, degree: int, order: int) -> list[Generator]:
    top = order if r is None else min(order, r)
    out = []
    for i in range(1, q + 1):
        for a in range(top + 1):
            if degree >= 1:
                out.append(Generator(H, i, a))
            if degree >= 2:
                out.append(Generator(C, i, a))
    return out


@lru_cache(maxsize=None)
def _ideal(variant: IdealVariant, q: int, r: int | None, degree: int, order: int, depth: int | None) -> Echelon:
    if degree < 2 or order < 0:
        return Echelon()
    ctx = AlgebraContext(q, r)
    pc = piece(ctx, degree, order)
    idx = pc.index
    e = _closure(variant, q, r, degree, order, depth).copy()
    for g in _generators(q, r, degree, order):
        gm = Monomial((g,), ()) if g.kind == H else Monomial((), (g,))
        lower_deg = degree - g.degree
        lower = _ideal(variant, q, r, lower_deg, order - g.order, depth)
        if not lower.rank:
            continue
        lower_piece = piece(ctx, lower_deg, order - g.order)
        amb = lower_piece.ambient
        for row in lower.rows():
            vec: Vector = {}
            for k, a in row.items():
                sign, m = monomial_product(gm, amb[k])
                if sign:
                    j = idx[m]
                    s = vec.get(j, 0) + (a if sign > 0 else -a)
                    if s:
                        vec[j] = s
                    else:
                        vec.pop(j, None)
            e.add(vec)
    return e


def ideal_slice(variant: IdealVariant, ctx: AlgebraContext, degree: int, order: int,
                delta_depth: int | None = None, length: int | None = None) -> SubspaceBasis:
    """Intersection of the ideal with the (degree, order) piece (optionally one length)."""
    full = _ideal(variant, ctx.q, ctx.r, degree, order, delta_depth)
    if length is None:
        return SubspaceBasis(piece(ctx, degree, order), full)
    # every ideal here is spanned by length-homogeneous elements, so projecting is exact
    return SubspaceBasis(piece(ctx, degree, order, length), _project_length(ctx, degree, order, length, full))


def _project_length(ctx, degree, order, length, full: Echelon) -> Echelon:
    src = piece(ctx, degree, order)
    dst = piece(ctx, degree, order, length)
    didx = dst.index
    amb = src.ambient
    e = Echelon()
    for row in full.rows():
        v = {didx[amb[k]]: a for k, a in row.items() if amb[k].length == length}
        if v:
            e.add(v)
    return e


def zero_slice(ctx: AlgebraContext, degree: int, order: int, length: int | None = None) -> SubspaceBasis:
    return SubspaceBasis(piece(ctx, degree, order, length), Echelon())


def ctx_slice(ctx: AlgebraContext, degree: int, order: int, length: int | None = None,
              delta_depth: int | None = None) -> SubspaceBasis:
    """Ideal slice selected by the context's quotient variant (zero for FREE)."""
    variant = ideal_for(ctx)
    if variant is None:
        return zero_slice(ctx, degree, order, length)
    return ideal_slice(variant, ctx, degree, order, delta_depth, length)


def _variant_of(x: Element, variant: IdealVariant | None | str):
    if variant == "ctx":
        return ideal_for(x.ctx)
    return variant


def is_in_ideal(x: Element, variant: IdealVariant | None | str = "ctx", delta_depth: int | None = None) -> bool:
    """Membership test, split into bigraded components."""
    variant = _variant_of(x, variant)
    if variant is None:
        return not x
    for (deg, order), part in x.homogeneous_parts().items():
        if not ideal_slice(variant, x.ctx, deg, order, delta_depth).contains(part):
            return False
    return True


def reduce(x: Element, variant: IdealVariant | None | str = "ctx", delta_depth: int | None = None) -> Element:
    """Canonical coset representative: pivot monomials of the ideal slice eliminated."""
    variant = _variant_of(x, variant)
    if variant is None:
        return x
    out = Element.zero(x.ctx)
    for (deg, order), part in x.homogeneous_parts().items():
        out = out + ideal_slice(variant, x.ctx, deg, order, delta_depth).reduce(part)
    return Element._raw(out.terms, x.ctx)


def congruent(x: Element, y: Element, variant: IdealVariant | None | str = "ctx") -> bool:
    return is_in_ideal(x - y, variant)
