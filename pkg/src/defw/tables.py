"""Reference computations at q = 1: low-order F_{0,k}, projector tables, products.

Reference values are stored below in the element text syntax (h[1,a] is
h_(a), c[1,b] is c_(b)); every comparison is made modulo the ideal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cohomology as coh
from .algebra import AlgebraContext, Element
from .derivations import derivation
from .linalg import Echelon, Vector, apply, solve_in_span
from .quotients import is_in_ideal
from .textio import parse_element

CTX = AlgebraContext(1)

GV = "h[1,0]*c[1,0]"
FLK = "h[1,0]*h[1,1]*c[1,0]"


def P(text: str) -> Element:
    return parse_element(text, CTX)


# ---------------------------------------------------------------- reference projector tables

PROJECTOR_TABLES: dict[int, list[tuple[str, str]]] = {
    2: [
        ("h[1,2]", "0"),
        ("h[1,0]*h[1,2]", "0"),
        ("h[1,2]*c[1,0]", "-h[1,1]*c[1,1]"),
        ("h[1,0]*h[1,2]*c[1,0]", "-h[1,0]*h[1,1]*c[1,1]"),
        ("c[1,2]", "0"),
        ("c[1,2]*h[1,0]", "-c[1,1]*h[1,1]"),
        ("c[1,2]*c[1,0]", "c[1,2]*c[1,0]"),
        ("c[1,2]*h[1,0]*c[1,0]", "c[1,2]*h[1,0]*c[1,0]"),
        ("h[1,1]*c[1,1]", "h[1,1]*c[1,1]"),
        ("h[1,0]*h[1,1]*c[1,1]", "h[1,0]*h[1,1]*c[1,1]"),
        ("c[1,1]^2", "c[1,1]^2"),
        ("c[1,1]^2*h[1,0]", "c[1,1]^2*h[1,0]"),
    ],
    3: [
        ("h[1,3]", "0"),
        ("h[1,3]*c[1,0]", "-(1/2)*h[1,2]*c[1,1] + (1/2)*h[1,1]*c[1,2]"),
        ("h[1,0]*h[1,3]*c[1,0]", "-h[1,1]*h[1,2]*c[1,0] - (1/2)*h[1,0]*h[1,2]*c[1,1] + (1/2)*h[1,0]*h[1,1]*c[1,2]"),
        ("c[1,3]", "0"),
        ("h[1,0]*c[1,3]", "-(1/2)*h[1,1]*c[1,2] + (1/2)*h[1,2]*c[1,1]"),
        ("h[1,0]*c[1,3]*c[1,0]", "-(1/2)*h[1,1]*c[1,2]*c[1,0] + h[1,1]*c[1,1]^2 + (1/2)*h[1,2]*c[1,1]*c[1,0]"),
        ("h[1,1]*h[1,2]", "h[1,1]*h[1,2]"),
        ("h[1,1]*h[1,2]*c[1,0]", "h[1,1]*h[1,2]*c[1,0]"),
        ("h[1,0]*h[1,1]*h[1,2]", "h[1,0]*h[1,1]*h[1,2]"),
        ("h[1,0]*h[1,1]*h[1,2]*c[1,0]", "h[1,0]*h[1,1]*h[1,2]*c[1,0]"),
        ("h[1,1]*c[1,2]", "-(1/2)*h[1,2]*c[1,1] + (1/2)*h[1,1]*c[1,2]"),
        ("h[1,1]*c[1,2]*c[1,0]", "-h[1,1]*c[1,1]^2"),
        ("h[1,1]*c[1,1]^2", "h[1,1]*c[1,1]^2"),
        ("h[1,0]*c[1,2]*c[1,1]", "-(1/2)*h[1,1]*c[1,1]^2"),
        ("h[1,0]*c[1,1]^3", "0"),
    ],
    4: [
        ("h[1,4]", "0"),
        ("h[1,4]*c[1,0]", "-(1/5)*h[1,3]*c[1,1] + (3/5)*h[1,2]*c[1,2] - (1/5)*h[1,1]*c[1,3]"),
        ("h[1,0]*h[1,4]", "0"),
        ("h[1,0]*h[1,4]*c[1,0]",
         "-(1/5)*h[1,0]*h[1,3]*c[1,1] + (9/5)*h[1,1]*h[1,2]*c[1,1] + (3/5)*h[1,0]*h[1,2]*c[1,2]"
         " - (1/5)*h[1,0]*h[1,1]*c[1,3]"),
        ("h[1,1]*h[1,3]", "0"),
        ("h[1,1]*h[1,3]*c[1,0]", "-h[1,1]*h[1,2]*c[1,1]"),
        ("h[1,0]*h[1,1]*h[1,3]", "0"),
        ("h[1,0]*h[1,1]*h[1,3]*c[1,0]", "-h[1,0]*h[1,1]*h[1,2]*c[1,1]"),
        ("h[1,3]*c[1,1]", "(1/5)*h[1,3]*c[1,1] - (3/5)*h[1,2]*c[1,2] + (1/5)*h[1,1]*c[1,3]"),
        ("h[1,0]*h[1,3]*c[1,1]",
         "(1/5)*h[1,0]*h[1,3]*c[1,1] - (4/5)*h[1,1]*h[1,2]*c[1,1] - (3/5)*h[1,0]*h[1,2]*c[1,2]"
         " + (1/5)*h[1,0]*h[1,1]*c[1,3]"),
        ("h[1,1]*h[1,2]*c[1,1]", "h[1,1]*h[1,2]*c[1,1]"),
        ("h[1,0]*h[1,1]*h[1,2]*c[1,1]", "h[1,0]*h[1,1]*h[1,2]*c[1,1]"),
        ("h[1,2]*c[1,2]", "-(1/5)*h[1,3]*c[1,1] + (3/5)*h[1,2]*c[1,2] - (1/5)*h[1,1]*c[1,3]"),
        ("h[1,2]*c[1,2]*c[1,0]",
         "-(1/5)*h[1,3]*c[1,0]*c[1,1] + (3/5)*h[1,2]*c[1,0]*c[1,2] - (1/15)*h[1,2]*c[1,1]^2"
         " - (1/5)*h[1,1]*c[1,0]*c[1,3] + (1/15)*h[1,1]*c[1,1]*c[1,2]"),
        ("h[1,2]*c[1,1]^2", "(2/3)*h[1,2]*c[1,1]^2 - (2/3)*h[1,1]*c[1,1]*c[1,2]"),
        ("h[1,0]*h[1,2]*c[1,2]",
         "-(1/5)*h[1,0]*h[1,3]*c[1,1] + (3/5)*h[1,0]*h[1,2]*c[1,2] - (1/5)*h[1,1]*h[1,2]*c[1,1]"
         " - (1/5)*h[1,0]*h[1,1]*c[1,3]"),
        ("h[1,0]*h[1,2]*c[1,0]*c[1,2]",
         "(1/3)*h[1,0]*h[1,2]*c[1,0]*c[1,2] - (1/3)*h[1,0]*h[1,2]*c[1,1]^2 - (1/3)*h[1,0]*h[1,1]*c[1,3]*c[1,0]"
         " - (1/3)*h[1,0]*h[1,1]*c[1,1]*c[1,2]"),
        ("h[1,0]*h[1,2]*c[1,1]^2", "(2/3)*h[1,0]*h[1,2]*c[1,1]^2 - (2/3)*h[1,0]*h[1,1]*c[1,1]*c[1,2]"),
        ("h[1,1]*c[1,2]*c[1,1]", "-(1/3)*h[1,2]*c[1,1]^2 + (1/3)*h[1,1]*c[1,1]*c[1,2]"),
        ("h[1,0]*h[1,1]*c[1,1]*c[1,2]", "-(1/3)*h[1,0]*h[1,2]*c[1,1]^2 + (1/3)*h[1,0]*h[1,1]*c[1,1]*c[1,2]"),
        ("h[1,0]*c[1,2]^2",
         "(2/15)*h[1,2]*c[1,1]^2 - (2/15)*h[1,1]*c[1,1]*c[1,2] + (3/5)*h[1,0]*c[1,2]^2"
         " - (2/5)*h[1,0]*c[1,1]*c[1,3]"),
        ("h[1,0]*c[1,1]^2*c[1,2]", "0"),
        ("h[1,0]*c[1,0]*c[1,2]^2", "0"),
    ],
}

# E_{0,4} candidates with the reference exactness verdict (None: no verdict, possibly non-trivial)
E04_CANDIDATES: list[tuple[str, bool | None]] = [
    ("h[1,3]*c[1,1] - 3*h[1,2]*c[1,2] + h[1,1]*c[1,3]", None),
    ("h[1,0]*h[1,3]*c[1,1] - 3*h[1,0]*h[1,2]*c[1,2] + h[1,0]*h[1,1]*c[1,3]", None),
    ("h[1,1]*h[1,2]*c[1,1]", None),
    ("h[1,0]*h[1,1]*h[1,2]*c[1,1]", None),
    ("-3*h[1,2]*c[1,0]*c[1,2] + h[1,1]*c[1,0]*c[1,3]", True),
    ("h[1,2]*c[1,1]^2 - h[1,1]*c[1,1]*c[1,2]", True),
    ("-3*h[1,0]*h[1,2]*c[1,0]*c[1,2] + h[1,0]*h[1,1]*c[1,0]*c[1,3]", True),
    ("h[1,0]*h[1,2]*c[1,1]^2 - h[1,0]*h[1,1]*c[1,1]*c[1,2]", True),
    ("3*h[1,0]*c[1,2]^2 - 2*h[1,0]*c[1,1]*c[1,3]", True),
]

# W basis of the type-(2,2), order-5 piece, in the reference order
W_BASIS = [
    "h[1,0]*h[1,1]*c[1,0]*c[1,4]",
    "h[1,0]*h[1,1]*c[1,1]*c[1,3]",
    "h[1,0]*h[1,2]*c[1,0]*c[1,3]",
    "h[1,0]*h[1,3]*c[1,0]*c[1,2]",
    "h[1,1]*h[1,2]*c[1,0]*c[1,2]",
]

W_GENERATORS = W_BASIS[:2] + ["h[1,0]*h[1,1]*c[1,2]^2", W_BASIS[2], "h[1,0]*h[1,2]*c[1,1]*c[1,2]",
                              W_BASIS[3], "h[1,0]*h[1,3]*c[1,1]^2", W_BASIS[4], "h[1,1]*h[1,2]*c[1,1]^2"]

F = Fraction
C_OF_P = [
    (F(-1, 14), F(-15, 14), F(-9, 14), F(9, 14), F(9, 14)),
    (F(5, 28), F(33, 28), F(3, 28), F(-3, 28), F(-3, 28)),
    (F(-3, 28), F(-3, 28), F(15, 28), F(-15, 28), F(-15, 28)),
    (F(1, 14), F(1, 14), F(-5, 14), F(5, 14), F(-9, 14)),
    (F(0), F(0), F(0), F(0), F(1)),
]

Z_REFERENCE = [(1, 6, 0, 0, 0), (0, 1, 1, -1, 0), (0, 0, 0, 0, 1)]
B_REFERENCE = [(1, 0, -6, 6, 0), (0, 5, 5, -5, -3)]

TYPE31_BASIS = [
    "h[1,0]*h[1,1]*h[1,4]*c[1,0]",
    "h[1,0]*h[1,2]*h[1,3]*c[1,0]",
    "h[1,0]*h[1,1]*h[1,3]*c[1,1]",
    "h[1,0]*h[1,1]*h[1,2]*c[1,2]",
]
# reference images; the second entry is listed with c_(0) on its third term, which cannot be
# homogeneous of order 5; the c_(1) reading is used here
TYPE31_IMAGES = [
    "(1/7)*h[1,0]*h[1,1]*h[1,4]*c[1,0] - (6/7)*h[1,0]*h[1,2]*h[1,3]*c[1,0] - (3/14)*h[1,0]*h[1,1]*h[1,3]*c[1,1]"
    " + (9/14)*h[1,0]*h[1,1]*h[1,2]*c[1,2]",
    "-(1/7)*h[1,0]*h[1,1]*h[1,4]*c[1,0] + (6/7)*h[1,0]*h[1,2]*h[1,3]*c[1,0] - (1/28)*h[1,0]*h[1,1]*h[1,3]*c[1,1]"
    " + (3/28)*h[1,0]*h[1,1]*h[1,2]*c[1,2]",
    "(1/4)*h[1,0]*h[1,1]*h[1,3]*c[1,1] - (3/4)*h[1,0]*h[1,1]*h[1,2]*c[1,2]",
    "-(1/4)*h[1,0]*h[1,1]*h[1,3]*c[1,1] + (3/4)*h[1,0]*h[1,1]*h[1,2]*c[1,2]",
]

V_GENERATOR = "h[1,1]*h[1,2]*c[1,0]*c[1,2]"
FIVE_FACTOR = "h[1,0]*h[1,1]*h[1,2]*c[1,0]*c[1,2]"

# reference product values, as multiples of [h_(1) h_(2) c_(0) c_(2)]
PRODUCTS_REFERENCE = {(2, 3): F(-4), (1, 4): F(4), (1, 3): F(0)}


# ---------------------------------------------------------------- helpers


def congruent(x: Element, y: Element) -> bool:
    return is_in_ideal(x - y)


def change_of_basis(rows: list[Vector], target: list[Vector]) -> list[list[Fraction]] | None:
    """M with rows[i] = sum_j M[i][j] target[j], provided both lists span the same space."""
    m = []
    for v in rows:
        sol = solve_in_span(target, v)
        if sol is None:
            return None
        m.append(sol)
    if Echelon(rows).rank != Echelon(target).rank:
        return None
    return m


def _vec(t) -> Vector:
    return {i: Fraction(a) for i, a in enumerate(t) if a}


def _tuple(v: Vector, n: int) -> tuple[Fraction, ...]:
    return tuple(v.get(i, Fraction(0)) for i in range(n))


def delta_gv(k: int) -> Element:
    return derivation("delta", CTX).power(P(GV), k)


# ---------------------------------------------------------------- computations


@dataclass
class ProjectorRow:
    k: int
    source: Element
    reference: Element
    engine: Element
    match: bool


def projector_tables() -> list[ProjectorRow]:
    rows = []
    for k, table in PROJECTOR_TABLES.items():
        for src, img in table:
            x = P(src)
            engine = coh.projector_p(1, k, x)
            reference = P(img)
            rows.append(ProjectorRow(k, x, reference, engine, congruent(engine, reference)))
    return rows


@dataclass
class CandidateRow:
    element: Element
    in_E0: bool
    closed: bool
    exact: bool
    reference_exact: bool | None


def e04_candidates() -> list[CandidateRow]:
    rows = []
    for text, reference_exact in E04_CANDIDATES:
        x = P(text)
        degree, order = x.bidegree()
        qp = coh.quotient_piece(CTX, degree, order)
        in_e0 = coh.eigenspace_E(CTX, 0, degree, order).contains(qp.coords(x))
        h = coh.cohomology(CTX, degree, order)
        closed = h.is_cocycle(x)
        rows.append(CandidateRow(x, in_e0, closed, closed and h.is_coboundary(x), reference_exact))
    return rows


def generators() -> dict:
    h30 = coh.cohomology(CTX, 3, 0)
    f41 = coh.F_lambda(CTX, 0, 4, 1)
    f31 = coh.F_lambda(CTX, 0, 3, 1)
    flk = f41.cls(P(FLK))
    dgv = f31.cls(delta_gv(1))
    return {
        "H(3,0)": h30,
        "gv_class_nonzero": not h30.cls(P(GV)).is_zero,
        "F0(3,1)": f31,
        "F0(4,1)": f41,
        "flk_class_nonzero": not flk.is_zero,
        "delta_gv_class_nonzero": not dgv.is_zero,
        "F0_order1_dims": {d: coh.F_lambda(CTX, 0, d, 1).dimension for d in range(9)},
    }


def f0_vanishing(max_degree: int = 8) -> dict[int, dict[int, int]]:
    return {k: {d: coh.F_lambda(CTX, 0, d, k).dimension for d in range(max_degree + 1)} for k in (2, 3, 4)}


@dataclass
class Type22Slice:
    quotient_dim: int
    basis_is_basis: bool
    c_of_p: list[tuple[Fraction, ...]]
    c_of_p_match: list[bool]
    z_engine: list[tuple[Fraction, ...]]
    z_certificate: list[list[Fraction]] | None
    b_engine: list[tuple[Fraction, ...]]
    b_certificate: list[list[Fraction]] | None
    type31_images: list[Element]
    type31_match: list[bool]
    v_dimension: int
    v_generator_nonzero: bool
    v_basis: list[Element]
    generators_closed: bool


def type22_slice() -> Type22Slice:
    qp = coh.quotient_piece(CTX, 6, 5, 4)
    basis = [qp.coords(P(w)) for w in W_BASIS]
    n = len(basis)

    def C(x: Element) -> tuple[Fraction, ...]:
        sol = solve_in_span(basis, qp.coords(x))
        return tuple(sol)

    cp = [C(coh.projector_p(1, 5, P(w))) for w in W_BASIS]
    e0 = coh.eigenspace_E(CTX, 0, 6, 5, 4)
    z_rows = Echelon(_vec(C(qp.element(r))) for r in e0.rows())
    d_in = coh.d_matrix(CTX, 5, 5, 4)
    b_rows = Echelon(_vec(C(qp.element(apply(d_in, r)))) for r in coh.eigenspace_E(CTX, 0, 5, 5, 4).rows())
    images = [coh.projector_p(1, 5, P(t)) for t in TYPE31_BASIS]
    h22 = coh.cohomology(CTX, 6, 5, 4)
    v = coh.F_lambda(CTX, 0, 6, 5, 4)
    return Type22Slice(
        quotient_dim=qp.dim,
        basis_is_basis=Echelon(basis).rank == qp.dim == n,
        c_of_p=cp,
        c_of_p_match=[a == tuple(b) for a, b in zip(cp, C_OF_P)],
        z_engine=[_tuple(r, n) for r in z_rows.rows()],
        z_certificate=change_of_basis(z_rows.rows(), [_vec(t) for t in Z_REFERENCE]),
        b_engine=[_tuple(r, n) for r in b_rows.rows()],
        b_certificate=change_of_basis(b_rows.rows(), [_vec(t) for t in B_REFERENCE]),
        type31_images=images,
        type31_match=[congruent(a, P(b)) for a, b in zip(images, TYPE31_IMAGES)],
        v_dimension=v.dimension,
        v_generator_nonzero=not v.cls(P(V_GENERATOR)).is_zero,
        v_basis=v.basis,
        generators_closed=all(h22.is_cocycle(P(w)) for w in W_GENERATORS),
    )


@dataclass
class ProductRow:
    i: int
    j: int
    engine_coeff: Fraction
    reference_coeff: Fraction
    representative: Element


def gv_products() -> dict:
    unit = coh.cohomology(CTX, 6, 5, 4).cls(P(V_GENERATOR))
    cls = lambda x: coh.class_of(x, length=2)

    def in_units(c) -> Fraction:
        # H(6,5) restricted to length 4 is one-dimensional
        return c.coords[0] / unit.coords[0] if c.coords else Fraction(0)

    rows = []
    for (i, j), reference in PRODUCTS_REFERENCE.items():
        p = coh.class_mul(cls(delta_gv(i)), cls(delta_gv(j)))
        rows.append(ProductRow(i, j, in_units(p), reference, p.representative))
    d23 = coh.class_mul(cls(delta_gv(2)), cls(delta_gv(3)))
    d14 = coh.class_mul(cls(delta_gv(1)), cls(delta_gv(4)))
    sig = coh.class_sigma(d23)
    reps = {k: delta_gv(k) for k in range(1, 5)}
    return {
        "rows": rows,
        "h_dimension": coh.cohomology(CTX, 6, 5, 4).dimension,
        "sum_zero": all(a + b == 0 for a, b in zip(d23.coords, d14.coords)),
        "nonzero": not d14.is_zero and not d23.is_zero,
        "sigma_zero": sig.is_zero,
        "in_F0": coh.F_lambda(CTX, 0, 6, 5, 4).dimension == 1 and not d14.is_zero,
        "delta_gv": reps,
        "delta_gv_1_equals_2h1c0": coh.cohomology(CTX, 3, 1).cls(reps[1]) == coh.cohomology(CTX, 3, 1).cls(
            P("2*h[1,1]*c[1,0]")),
    }


def five_factor_class() -> dict:
    x = P(FIVE_FACTOR)
    f = coh.F_lambda(CTX, 0, 7, 5)
    h = coh.cohomology(CTX, 7, 5)
    return {
        "closed": h.is_cocycle(x),
        "sigma_zero": is_in_ideal(derivation("sigma", CTX)(x)),
        "class_nonzero_in_F0": not f.cls(x).is_zero,
        "class_nonzero_in_H": not h.cls(x).is_zero,
        "F0_dimension": f.dimension,
    }


@dataclass
class TripleRow:
    ijk: tuple[int, int, int]
    member: bool
    member_r5: bool
    member_depth2: bool


def triple_products(cap: int = 2) -> list[TripleRow]:
    r5 = AlgebraContext(1, 5)
    rows = []
    for i in range(6):
        for j in range(i, 6):
            for k in range(j, 6):
                if i + j + k > 5:
                    continue
                text = f"c[1,{i}]*c[1,{j}]*c[1,{k}]"
                rows.append(TripleRow(
                    (i, j, k),
                    is_in_ideal(P(text)),
                    is_in_ideal(parse_element(text, r5)),
                    is_in_ideal(P(text), delta_depth=cap),
                ))
    return rows
