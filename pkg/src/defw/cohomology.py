"""Cohomology of the quotient DGAs, piece by piece.

Everything is linear algebra on *quotient coordinates*: a quotient piece
V[D, O] (optionally cut to one length) has as basis the monomials that are
not pivots of the ideal slice, and an element's coordinates are those of
its reduced form.  Because d, delta and sigma preserve the ideal, their
matrices on these coordinates are the induced maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Callable, Sequence

from .algebra import AlgebraContext, Element, Monomial, Variant, multiply
from .derivations import derivation
from .errors import UnsupportedContextError, ValidationError
from .linalg import Echelon, Vector, apply, kernel
from .quotients import Piece, ctx_slice, piece, reduce

Operator = Callable[[Element], Element]


# ---------------------------------------------------------------- quotient pieces


@dataclass(frozen=True, eq=False)
class QuotientPiece:
    """Quotient V[D, O] = (free piece) / (ideal slice), with explicit coordinates."""

    ctx: AlgebraContext
    degree: int
    order: int
    length: int | None = None
    delta_depth: int | None = None

    @cached_property
    def ambient(self) -> Piece:
        return piece(self.ctx, self.degree, self.order, self.length)

    @cached_property
    def ideal(self):
        return ctx_slice(self.ctx, self.degree, self.order, self.length, self.delta_depth)

    @cached_property
    def basis_columns(self) -> list[int]:
        pivots = set(self.ideal.pivot_columns)
        return [k for k in range(len(self.ambient)) if k not in pivots]

    @cached_property
    def _position(self) -> dict[int, int]:
        return {k: j for j, k in enumerate(self.basis_columns)}

    @property
    def dim(self) -> int:
        return len(self.basis_columns)

    @cached_property
    def basis_monomials(self) -> tuple[Monomial, ...]:
        amb = self.ambient.ambient
        return tuple(amb[k] for k in self.basis_columns)

    def basis(self) -> list[Element]:
        return [Element.from_monomial(m, self.ctx) for m in self.basis_monomials]

    def coords(self, x: Element) -> Vector:
        """Coordinates of the coset of ``x`` (which must lie in this piece)."""
        raw = self.ambient.vector(x)
        reduced = self.ideal.echelon.reduce(raw)
        pos = self._position
        return {pos[k]: v for k, v in reduced.items()}

    def element(self, v: Vector) -> Element:
        cols = self.basis_columns
        return self.ambient.element({cols[j]: a for j, a in v.items() if a})

    def reduce(self, x: Element) -> Element:
        return self.element(self.coords(x))

    def matrix(self, op: Operator, target: QuotientPiece) -> list[Vector]:
        """Columns: coordinates in ``target`` of op applied to each basis monomial."""
        return [target.coords(_restrict(op(b), target)) for b in self.basis()]


def _restrict(x: Element, target: QuotientPiece) -> Element:
    # a length-cut target only sees its own length; other lengths cannot occur for
    # length-preserving operators, so anything else is a caller bug
    if target.length is None:
        return x
    bad = [m for m in x.terms if m.length != target.length]
    if bad:
        raise ValidationError(f"operator left length {target.length}: {bad[0]}")
    return x


@lru_cache(maxsize=None)
def quotient_piece(ctx: AlgebraContext, degree: int, order: int, length: int | None = None,
                   delta_depth: int | None = None) -> QuotientPiece:
    return QuotientPiece(ctx, degree, order, length, delta_depth)


def cochain_space(ctx: AlgebraContext, degree: int, order: int, length: int | None = None) -> QuotientPiece:
    return quotient_piece(ctx, degree, order, length)


def _d(ctx: AlgebraContext) -> Operator:
    return derivation("d", ctx)


@lru_cache(maxsize=None)
def d_matrix(ctx: AlgebraContext, degree: int, order: int, length: int | None = None) -> list[Vector]:
    src = quotient_piece(ctx, degree, order, length)
    dst = quotient_piece(ctx, degree + 1, order, length)
    return src.matrix(_d(ctx), dst)


# ---------------------------------------------------------------- cohomology


@dataclass(eq=False)
class CohomologyPiece:
    """H at one (degree, order[, length]) for the complex cut out by ``subcomplex``.

    ``cocycles`` and ``coboundaries`` are RREF subspaces of the quotient
    coordinates; ``basis`` holds reduced representatives whose coordinates are
    the RREF rows of (cocycles + coboundaries) / coboundaries projected off
    the coboundary pivots.
    """

    ctx: AlgebraContext
    degree: int
    order: int
    length: int | None
    space: QuotientPiece
    cocycles: Echelon
    coboundaries: Echelon
    label: str = "H"
    _reps: Echelon = field(default=None, repr=False)

    def __post_init__(self):
        reps = Echelon()
        for z in self.cocycles.rows():
            reps.add(self.coboundaries.reduce(z))
        self._reps = reps

    @property
    def dimension(self) -> int:
        return self._reps.rank

    @property
    def basis_vectors(self) -> list[Vector]:
        return self._reps.rows()

    @property
    def basis(self) -> list[Element]:
        return [self.space.element(v) for v in self._reps.rows()]

    def is_cocycle(self, x: Element) -> bool:
        return self.cocycles.contains(self.space.coords(x))

    def is_coboundary(self, x: Element) -> bool:
        return self.coboundaries.contains(self.space.coords(x))

    def coordinates(self, x: Element) -> list[Fraction]:
        """Coordinates of the class of cocycle ``x`` on ``basis``."""
        v = self.space.coords(x)
        if not self.cocycles.contains(v):
            raise ValidationError(f"{x} is not a cocycle in this piece")
        found = self._reps.coordinates(self.coboundaries.reduce(v))
        if found is None:  # pragma: no cover - cannot happen for a cocycle
            raise ValidationError("cocycle outside the representative span")
        return [found.get(p, Fraction(0)) for p in self._reps.pivots]

    def cls(self, x: Element) -> CohomologyClass:
        return CohomologyClass(self, tuple(self.coordinates(x)), self.space.reduce(x))

    def summary(self) -> dict:
        return {"degree": self.degree, "order": self.order, "length": self.length,
                "dimension": self.dimension, "basis": [str(b) for b in self.basis]}


def _cohomology_from(space: QuotientPiece, cocycle_rows: list[Vector], boundary_rows: list[Vector],
                     ctx, degree, order, length, label) -> CohomologyPiece:
    return CohomologyPiece(ctx, degree, order, length, space, Echelon(cocycle_rows), Echelon(boundary_rows), label)


@lru_cache(maxsize=None)
def cohomology(ctx: AlgebraContext, degree: int, order: int, length: int | None = None) -> CohomologyPiece:
    """Kernel of d on V[D, O] modulo the image of d from V[D-1, O]."""
    if degree < 0 or order < 0:
        raise ValidationError("degree and order must be non-negative")
    space = quotient_piece(ctx, degree, order, length)
    out = d_matrix(ctx, degree, order, length)
    z = kernel(out, quotient_piece(ctx, degree + 1, order, length).dim)
    b = d_matrix(ctx, degree - 1, order, length) if degree >= 1 else []
    return _cohomology_from(space, z, b, ctx, degree, order, length, "H")


def type_filtered_cohomology(ctx: AlgebraContext, degree: int, order: int, typ: tuple[int, int]) -> CohomologyPiece:
    """Cohomology of the type-(a, b) block at q = 1.

    d sends type (a, b) to (a-1, b+1), so at a fixed degree the type is the
    length; the block complex is the length-(a+b) subcomplex.
    """
    if ctx.q != 1:
        raise UnsupportedContextError("type filtration is defined for q = 1")
    a, b = typ
    if a < 0 or b < 0:
        raise ValidationError(f"bad type {typ}")
    if degree != a + 2 * b:
        raise ValidationError(f"type {typ} lives in degree {a + 2 * b}, not {degree}")
    return cohomology(ctx, degree, order, a + b)


# ---------------------------------------------------------------- eigenspaces of delta sigma


def lambda_mk(m: int, k: int) -> Fraction:
    """Eigenvalue of delta sigma on the m-th summand of order k."""
    if not 1 <= m <= k:
        raise ValidationError(f"need 1 <= m <= k, got m={m}, k={k}")
    return Fraction((m - 1) * (2 * k - m), 2)


def eigenvalues(k: int) -> list[Fraction]:
    if k == 0:
        return [Fraction(0)]
    return [lambda_mk(m, k) for m in range(1, k + 1)]


def _require_unbounded(ctx: AlgebraContext, what: str):
    if ctx.r is not None:
        raise UnsupportedContextError(f"{what} is computed in the unbounded-order algebra only")


def delta_sigma(ctx: AlgebraContext, prime: bool = False) -> Operator:
    dl = derivation("delta", ctx)
    sg = derivation("sigma_prime" if prime else "sigma", ctx)
    return lambda x: dl(sg(x))


@lru_cache(maxsize=None)
def delta_sigma_matrix(ctx: AlgebraContext, degree: int, order: int, length: int | None = None,
                       prime: bool = False) -> list[Vector]:
    _require_unbounded(ctx, "delta sigma")
    qp = quotient_piece(ctx, degree, order, length)
    return qp.matrix(delta_sigma(ctx, prime), qp)


def _shifted(mat: list[Vector], lam: Fraction) -> list[Vector]:
    out = []
    for j, col in enumerate(mat):
        v = dict(col)
        s = v.get(j, 0) - lam
        if s:
            v[j] = s
        else:
            v.pop(j, None)
        out.append(v)
    return out


@lru_cache(maxsize=None)
def eigenspace_E(ctx: AlgebraContext, lam: Fraction, degree: int, order: int,
                 length: int | None = None) -> Echelon:
    """E_lambda on the quotient piece: kernel of (delta sigma - lambda)."""
    lam = Fraction(lam)
    mat = delta_sigma_matrix(ctx, degree, order, length)
    n = quotient_piece(ctx, degree, order, length).dim
    return Echelon(kernel(_shifted(mat, lam), n))


@lru_cache(maxsize=None)
def F_lambda(ctx: AlgebraContext, lam: Fraction, degree: int, order: int,
             length: int | None = None) -> CohomologyPiece:
    """Cohomology of the subcomplex (E_lambda, d) at one bidegree."""
    _require_unbounded(ctx, "F_lambda")
    lam = Fraction(lam)
    space = quotient_piece(ctx, degree, order, length)
    e_here = eigenspace_E(ctx, lam, degree, order, length).rows()
    d_out = d_matrix(ctx, degree, order, length)
    combos = kernel([apply(d_out, v) for v in e_here], quotient_piece(ctx, degree + 1, order, length).dim)
    z = [_combine(e_here, w) for w in combos]
    b = []
    if degree >= 1:
        d_in = d_matrix(ctx, degree - 1, order, length)
        b = [apply(d_in, v) for v in eigenspace_E(ctx, lam, degree - 1, order, length).rows()]
    return _cohomology_from(space, z, b, ctx, degree, order, length, f"F[{lam}]")


def _combine(rows: Sequence[Vector], w: Vector) -> Vector:
    out: Vector = {}
    for j, a in w.items():
        for k, v in rows[j].items():
            s = out.get(k, 0) + a * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def induced_on_cohomology(h_src: CohomologyPiece, h_dst: CohomologyPiece, op: Operator) -> list[list[Fraction]]:
    """Matrix (columns = images of basis classes) of a chain map on cohomology."""
    return [h_dst.coordinates(op(b)) for b in h_src.basis]


def eigen_dims_on_cohomology(ctx: AlgebraContext, degree: int, order: int,
                             length: int | None = None) -> dict[Fraction, int]:
    """Independent route: eigenspace dimensions of the induced delta sigma on H itself."""
    h = cohomology(ctx, degree, order, length)
    if not h.dimension:
        return {lam: 0 for lam in eigenvalues(order)}
    mat = induced_on_cohomology(h, h, delta_sigma(ctx))
    cols = [{i: a for i, a in enumerate(col) if a} for col in mat]
    return {lam: len(kernel(_shifted(cols, lam), h.dimension)) for lam in eigenvalues(order)}


def check_F_lambda_double_entry(ctx: AlgebraContext, degree: int, order: int,
                                length: int | None = None) -> bool:
    """F via eigen-cochains must agree with the eigen-decomposition of H, and exhaust H."""
    direct = eigen_dims_on_cohomology(ctx, degree, order, length)
    via_e = {lam: F_lambda(ctx, lam, degree, order, length).dimension for lam in direct}
    return direct == via_e and sum(via_e.values()) == cohomology(ctx, degree, order, length).dimension


# ---------------------------------------------------------------- projectors


def p1_coefficients(k: int) -> list[Fraction]:
    """Coefficients of delta^i sigma^i, i = 0..k-1, in p_{1,k}."""
    if k < 1:
        raise ValidationError("p_{1,k} needs k >= 1")
    return [Fraction((-1) ** i * 2 ** i * factorial(2 * k - i - 2), factorial(2 * k - 2) * factorial(i))
            for i in range(k)]


def _order_of(x: Element) -> int | None:
    orders = {m.order for m in x.terms}
    if len(orders) > 1:
        raise ValidationError("element is not homogeneous in order")
    return orders.pop() if orders else None


def _apply_p1(x: Element, k: int) -> Element:
    dl = derivation("delta", x.ctx)
    sg = derivation("sigma", x.ctx)
    out = Element.zero(x.ctx)
    y = x
    for i, a in enumerate(p1_coefficients(k)):
        if i:
            y = sg(y)
            if not y:
                break
        out = out + dl.power(y, i).scale(a)
    return out


def projector_p(m: int, k: int, x: Element, reduced: bool = True) -> Element:
    """p_{m,k}(x), the projection of order-k x onto the lambda_{m,k}-eigenspace."""
    _require_unbounded(x.ctx, "projector_p")
    if not 1 <= m <= k:
        raise ValidationError(f"need 1 <= m <= k, got m={m}, k={k}")
    o = _order_of(x)
    if o is not None and o != k:
        raise ValidationError(f"element has order {o}, projector expects order {k}")
    a = k - m
    s = m - 1
    coeff = Fraction(2 ** s * factorial(2 * a + 1), factorial(s) * factorial(k + a))
    sg = derivation("sigma", x.ctx)
    dl = derivation("delta", x.ctx)
    y = _apply_p1(sg.power(x, s), a + 1)
    y = dl.power(y, s).scale(coeff)
    return reduce(y) if reduced else y


def projector_p_prime(i: int, k: int, l: int, x: Element, reduced: bool = True) -> Element:
    """p'_{i,k,l}(x): projection of order-k, length-l x onto the (i*l)-eigenspace of delta sigma'."""
    _require_unbounded(x.ctx, "projector_p_prime")
    if l < 1:
        raise ValidationError("p' needs length l >= 1 (the formula divides by l)")
    if not 0 <= i <= k:
        raise ValidationError(f"need 0 <= i <= k, got i={i}, k={k}")
    o = _order_of(x)
    if o is not None and o != k:
        raise ValidationError(f"element has order {o}, projector expects order {k}")
    bad = [mm for mm in x.terms if mm.length != l]
    if bad:
        raise ValidationError(f"element is not of length {l}: {bad[0]}")
    ctx = x.ctx.with_variant(Variant.W_PRIME) if x.ctx.variant is not Variant.FREE else x.ctx
    x = Element._raw(x.terms, ctx)
    sp = derivation("sigma_prime", ctx)
    dl = derivation("delta", ctx)
    out = Element.zero(ctx)
    y = sp.power(x, i)
    for m in range(k - i + 1):
        if m:
            y = sp(y)
        if not y:
            break
        coeff = Fraction((-1) ** m, factorial(i) * factorial(m) * l ** (m + i))
        out = out + dl.power(y, m + i).scale(coeff)
    return reduce(out) if reduced else out


def projector_matrix(ctx: AlgebraContext, m: int, k: int, degree: int, length: int | None = None) -> list[Vector]:
    qp = quotient_piece(ctx, degree, k, length)
    return qp.matrix(lambda x: projector_p(m, k, x, reduced=False), qp)


# ---------------------------------------------------------------- classes


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    piece: CohomologyPiece
    coords: tuple[Fraction, ...]
    representative: Element

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        p, o = self.piece, other.piece
        return (p.degree, p.order, p.length) == (o.degree, o.order, o.length) and self.coords == other.coords

    def __str__(self):
        return f"[{self.representative}]"


def _homogeneous(x: Element) -> tuple[int, int]:
    bd = x.bidegree()
    if bd is None:
        raise ValidationError("zero or inhomogeneous representative; pass degree and order explicitly")
    return bd


def class_of(x: Element, degree: int | None = None, order: int | None = None,
             length: int | None = None) -> CohomologyClass:
    if degree is None or order is None:
        degree, order = _homogeneous(x)
    return cohomology(x.ctx, degree, order, length).cls(x)


def _same_ctx(*classes: CohomologyClass):
    ctx = classes[0].piece.ctx
    for c in classes[1:]:
        if c.piece.ctx != ctx:
            raise ValidationError("classes come from different contexts")
    return ctx


def _length_sum(a: int | None, b: int | None) -> int | None:
    return None if a is None or b is None else a + b


def class_mul(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    ctx = _same_ctx(a, b)
    x = multiply(a.representative, b.representative)
    target = cohomology(ctx, a.piece.degree + b.piece.degree, a.piece.order + b.piece.order,
                        _length_sum(a.piece.length, b.piece.length))
    return target.cls(x)


def _check_sigma_ctx(ctx: AlgebraContext):
    if ctx.quotient_variant() not in (Variant.W, Variant.FREE):
        raise UnsupportedContextError("class_delta/class_sigma need the W or free variant")


def class_delta(a: CohomologyClass) -> CohomologyClass:
    ctx = a.piece.ctx
    _check_sigma_ctx(ctx)
    x = derivation("delta", ctx)(a.representative)
    return cohomology(ctx, a.piece.degree, a.piece.order + 1, a.piece.length).cls(x)


def class_sigma(a: CohomologyClass) -> CohomologyClass:
    ctx = a.piece.ctx
    _check_sigma_ctx(ctx)
    if a.piece.order == 0:
        raise ValidationError("sigma lowers the order; order-0 classes have no target")
    x = derivation("sigma", ctx)(a.representative)
    return cohomology(ctx, a.piece.degree, a.piece.order - 1, a.piece.length).cls(x)
