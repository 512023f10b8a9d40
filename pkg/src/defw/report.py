"""Markdown and JSON rendering of the q = 1 reference report."""
from __future__ import annotations

from fractions import Fraction

from . import tables
from .algebra import Element
from .textio import element_to_json, fraction_to_json


def _frac(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _vec(t) -> str:
    return "(" + ", ".join(_frac(a) for a in t) + ")"


def _fracs(t) -> list[dict]:
    return [fraction_to_json(a) for a in t]


def _matrix(m) -> list[list[dict]] | None:
    return None if m is None else [_fracs(row) for row in m]


def _el(x: Element) -> dict:
    return element_to_json(x)


def build_report() -> dict:
    """Every computed item of the report as a JSON-ready dict (no timing, no floats)."""
    gens = tables.generators()
    proj_rows = tables.projector_tables()
    cands = tables.e04_candidates()
    t22 = tables.type22_slice()
    prods = tables.gv_products()
    ff = tables.five_factor_class()
    triples = tables.triple_products()
    return {
        "generators": {
            "H(3,0)": {"dimension": gens["H(3,0)"].dimension, "basis": [_el(b) for b in gens["H(3,0)"].basis]},
            "gv_class_nonzero": gens["gv_class_nonzero"],
            "F0_order1_dims": {str(d): n for d, n in gens["F0_order1_dims"].items()},
            "F0(3,1)_basis": [_el(b) for b in gens["F0(3,1)"].basis],
            "F0(4,1)_basis": [_el(b) for b in gens["F0(4,1)"].basis],
            "flk_class_nonzero": gens["flk_class_nonzero"],
            "delta_gv_class_nonzero": gens["delta_gv_class_nonzero"],
        },
        "f0_vanishing": {
            "F0_dims": {str(k): {str(d): n for d, n in dims.items()} for k, dims in tables.f0_vanishing().items()},
            "projector_tables": [
                {"k": r.k, "source": _el(r.source), "reference": _el(r.reference), "engine": _el(r.engine), "match": r.match}
                for r in proj_rows
            ],
            "E04_candidates": [
                {"element": _el(c.element), "in_E0": c.in_E0, "closed": c.closed, "exact": c.exact,
                 "reference_exact": c.reference_exact}
                for c in cands
            ],
        },
        "type22": {
            "W_basis": tables.W_BASIS,
            "W_quotient_dim": t22.quotient_dim,
            "W_basis_is_basis": t22.basis_is_basis,
            "W_generators_closed": t22.generators_closed,
            "C_of_p": [{"source": w, "engine": _fracs(e), "reference": _fracs(p), "match": m}
                       for w, e, p, m in zip(tables.W_BASIS, t22.c_of_p, tables.C_OF_P, t22.c_of_p_match)],
            "Z": {"engine": [_fracs(r) for r in t22.z_engine], "reference": [_fracs(r) for r in tables.Z_REFERENCE],
                  "certificate": _matrix(t22.z_certificate)},
            "B": {"engine": [_fracs(r) for r in t22.b_engine], "reference": [_fracs(r) for r in tables.B_REFERENCE],
                  "certificate": _matrix(t22.b_certificate)},
            "type31_images": [{"source": s, "engine": _el(e), "match": m}
                              for s, e, m in zip(tables.TYPE31_BASIS, t22.type31_images, t22.type31_match)],
            "V_dimension": t22.v_dimension,
            "V_generator": tables.V_GENERATOR,
            "V_generator_nonzero": t22.v_generator_nonzero,
        },
        "products": {
            "delta_gv": {str(k): _el(v) for k, v in prods["delta_gv"].items()},
            "unit": tables.V_GENERATOR,
            "products": [{"product": f"delta^{r.i}(GV)*delta^{r.j}(GV)", "engine_coeff": fraction_to_json(r.engine_coeff),
                          "reference_coeff": fraction_to_json(r.reference_coeff), "match": r.engine_coeff == r.reference_coeff,
                          "representative": _el(r.representative)}
                         for r in prods["rows"]],
            "sum_zero": prods["sum_zero"],
            "nonzero": prods["nonzero"],
            "sigma_of_d2d3_zero": prods["sigma_zero"],
        },
        "five_factor": ff,
        "triples": [{"ijk": list(r.ijk), "member": r.member, "member_r5": r.member_r5,
                     "member_depth2": r.member_depth2} for r in triples],
    }


def _yes(b) -> str:
    if b is None:
        return "-"
    return "yes" if b else "no"


def render_markdown(data: dict) -> str:
    out: list[str] = ["# H*(D^inf W_1): low-order reference tables", ""]
    t = data["generators"]
    out += ["## F_{0,0} and F_{0,1}", "",
            f"- H(3,0): dimension {t['H(3,0)']['dimension']}, basis "
            + ", ".join(f"`{b['text']}`" for b in t["H(3,0)"]["basis"]),
            "- F_0 at order 1, dimensions by degree: "
            + ", ".join(f"{d}: {n}" for d, n in t["F0_order1_dims"].items()),
            "- F_0(3,1) basis: " + ", ".join(f"`{b['text']}`" for b in t["F0(3,1)_basis"])
            + f" (class of delta(GV) nonzero: {_yes(t['delta_gv_class_nonzero'])})",
            "- F_0(4,1) basis: " + ", ".join(f"`{b['text']}`" for b in t["F0(4,1)_basis"])
            + f" (class of FLK nonzero: {_yes(t['flk_class_nonzero'])})", ""]

    p = data["f0_vanishing"]
    out += ["## F_{0,k} for k = 2, 3, 4", "", "| k | dims for degree 0..8 |", "|---|---|"]
    for k, dims in p["F0_dims"].items():
        out.append(f"| {k} | {' '.join(str(n) for n in dims.values())} |")
    out += ["", "### Projector images p_{1,k}", "", "| k | source | reference | engine (reduced) | match |",
            "|---|---|---|---|---|"]
    for r in p["projector_tables"]:
        out.append(f"| {r['k']} | `{r['source']['text']}` | `{r['reference']['text']}` | `{r['engine']['text']}` "
                   f"| {_yes(r['match'])} |")
    out += ["", "### E_{0,4} candidates", "", "| element | in E_0 | closed | exact | reference exact |",
            "|---|---|---|---|---|"]
    for c in p["E04_candidates"]:
        out.append(f"| `{c['element']['text']}` | {_yes(c['in_E0'])} | {_yes(c['closed'])} | {_yes(c['exact'])} "
                   f"| {_yes(c['reference_exact'])} |")

    ts = data["type22"]
    fr = lambda d: _vec(Fraction(int(x["num"]), int(x["den"])) for x in d)
    out += ["", "## Type (2,2) part of F_{0,5}", "",
            f"- quotient piece dimension {ts['W_quotient_dim']}; reference basis is a basis: {_yes(ts['W_basis_is_basis'])}",
            f"- all nine generators closed: {_yes(ts['W_generators_closed'])}", "",
            "| source | C(p(source)) engine | reference | match |", "|---|---|---|---|"]
    for r in ts["C_of_p"]:
        out.append(f"| `{r['source']}` | {fr(r['engine'])} | {fr(r['reference'])} | {_yes(r['match'])} |")
    for name in ("Z", "B"):
        blk = ts[name]
        out += ["", f"{name}: engine rows " + ", ".join(fr(r) for r in blk["engine"])
                + "; reference rows " + ", ".join(fr(r) for r in blk["reference"])]
        if blk["certificate"] is None:
            out.append("  spans differ (no certificate)")
        else:
            out.append("  certificate (engine = M * reference): M = "
                       + "[" + "; ".join(" ".join(_frac(Fraction(int(x["num"]), int(x["den"]))) for x in row)
                                         for row in blk["certificate"]) + "]")
    out += ["", "Type (3,1) images under p:", ""]
    for r in ts["type31_images"]:
        out.append(f"- `{r['source']}` -> `{r['engine']['text']}` (matches reference: {_yes(r['match'])})")
    out += ["", f"V dimension {ts['V_dimension']}, `{ts['V_generator']}` nonzero: {_yes(ts['V_generator_nonzero'])}", ""]

    pr = data["products"]
    out += ["## Products of derivatives of GV", ""]
    for k, v in pr["delta_gv"].items():
        out.append(f"- delta^{k}(GV) = `{v['text']}`")
    out += ["", f"Classes in units of [`{pr['unit']}`]:", "", "| product | engine | reference | match |",
            "|---|---|---|---|"]
    for r in pr["products"]:
        e = _frac(Fraction(int(r["engine_coeff"]["num"]), int(r["engine_coeff"]["den"])))
        pp = _frac(Fraction(int(r["reference_coeff"]["num"]), int(r["reference_coeff"]["den"])))
        out.append(f"| {r['product']} | {e} | {pp} | {_yes(r['match'])} |")
    # the reference convention orders the unit as h_(2)h_(1)c_(0)c_(2), i.e. minus our unit
    out += ["", "In the reference factor order:", ""]
    for r in pr["products"]:
        e = -Fraction(int(r["engine_coeff"]["num"]), int(r["engine_coeff"]["den"]))
        pp = -Fraction(int(r["reference_coeff"]["num"]), int(r["reference_coeff"]["den"]))
        out.append(f"- `{r['product']} = {_frac(e)}*h[1,2]*h[1,1]*c[1,0]*c[1,2]` "
                   f"(reference: `{_frac(pp)}*h[1,2]*h[1,1]*c[1,0]*c[1,2]`)")
    out += ["", f"- delta^2(GV)delta^3(GV) + delta(GV)delta^4(GV) = 0: {_yes(pr['sum_zero'])}",
            f"- products nonzero: {_yes(pr['nonzero'])}",
            f"- sigma(delta^2(GV)delta^3(GV)) = 0: {_yes(pr['sigma_of_d2d3_zero'])}", ""]

    p2 = data["five_factor"]
    out += ["## h_(0)h_(1)h_(2)c_(0)c_(2)", ""]
    out += [f"- {k}: {_yes(v) if isinstance(v, bool) else v}" for k, v in p2.items()]
    out += ["", "## Triple products c_(i)c_(j)c_(k), i+j+k <= 5", "",
            "| (i,j,k) | in I | in I (r=5) | in I (delta depth 2) |", "|---|---|---|---|"]
    for r in data["triples"]:
        out.append(f"| {tuple(r['ijk'])} | {_yes(r['member'])} | {_yes(r['member_r5'])} | {_yes(r['member_depth2'])} |")
    out.append("")
    return "\n".join(out)
