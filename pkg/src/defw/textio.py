"""Text and JSON forms of monomials and elements.

Text: ``h[1,0]*h[1,1]*c[1,0]``, elements as ``-(1/5)*h[1,3]*c[1,1] + 3*h[1,2]*c[1,2]``.
Factors may be written in any order (the parser applies Koszul signs) and
``c[1,1]^2`` is accepted for repeated even factors.
JSON: coefficients as ``{"num": str, "den": str}``, monomials as factor lists
``[{"kind": "h", "i": 1, "a": 0}, ...]``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .algebra import H, AlgebraContext, Element, Generator, Monomial, make_monomial
from .errors import ValidationError


def format_coeff(v: Fraction) -> str:
    v = abs(v)
    if v == 1:
        return ""
    if v.denominator == 1:
        return f"{v.numerator}*"
    return f"({v.numerator}/{v.denominator})*"


def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    parts = []
    for m in sorted(x.terms):
        v = x.terms[m]
        body = str(m)
        coeff = format_coeff(v)
        if m.hs or m.cs:
            term = coeff + body
        else:
            term = str(abs(v).numerator) if abs(v).denominator == 1 else f"({abs(v).numerator}/{abs(v).denominator})"
        if not parts:
            parts.append(("-" if v < 0 else "") + term)
        else:
            parts.append((" - " if v < 0 else " + ") + term)
    return "".join(parts)


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<gen>[hc])\[\s*(?P<i>\d+)\s*,\s*(?P<a>\d+)\s*\](?:\^(?P<pow>\d+))?"
    r"|(?P<frac>\(\s*[-+]?\d+\s*(?:/\s*\d+\s*)?\))"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<op>[-+*])"
    r")"
)


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValidationError(f"cannot parse element text at {text[pos:]!r}")
        pos = mt.end()
        yield mt


def parse_element(text: str, ctx: AlgebraContext) -> Element:
    """Parse the element text syntax; factors in any order, Koszul signs applied."""
    total = Element.zero(ctx)
    sign = 1
    coeff = None
    hs: list[tuple[int, int]] = []
    cs: list[tuple[int, int]] = []
    seen_any = False
    have_term = False

    def flush():
        nonlocal total, sign, coeff, hs, cs, have_term
        if have_term:
            k = Fraction(sign) * (coeff if coeff is not None else 1)
            total = total + make_monomial(hs, cs, ctx).scale(k)
        sign, coeff, hs, cs, have_term = 1, None, [], [], False

    for mt in _tokens(text):
        seen_any = True
        if mt.group("op") in ("+", "-"):
            if have_term:
                flush()
            if mt.group("op") == "-":
                sign = -sign
        elif mt.group("op") == "*":
            continue
        elif mt.group("gen"):
            i, a = int(mt.group("i")), int(mt.group("a"))
            n = int(mt.group("pow") or 1)
            if mt.group("gen") == "h":
                hs.extend([(i, a)] * n)
            else:
                cs.extend([(i, a)] * n)
            have_term = True
        else:
            raw = (mt.group("frac") or mt.group("num")).strip("() ").replace(" ", "")
            value = Fraction(raw)
            coeff = value if coeff is None else coeff * value
            have_term = True
    if not seen_any:
        raise ValidationError("empty element text")
    flush()
    return total


def generator_to_json(g: Generator) -> dict:
    return {"kind": "h" if g.kind == H else "c", "i": g.index, "a": g.order}


def monomial_to_json(m: Monomial) -> list[dict]:
    return [generator_to_json(g) for g in m.factors]


def fraction_to_json(v: Fraction) -> dict:
    v = Fraction(v)
    return {"num": str(v.numerator), "den": str(v.denominator)}


def fraction_from_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def element_to_json(x: Element) -> dict:
    return {
        "text": format_element(x),
        "terms": [
            {"coeff": fraction_to_json(x.terms[m]), "monomial": monomial_to_json(m)}
            for m in sorted(x.terms)
        ],
    }


def element_from_json(payload: dict, ctx: AlgebraContext) -> Element:
    total = Element.zero(ctx)
    for term in payload["terms"]:
        hs, cs = [], []
        for f in term["monomial"]:
            (hs if f["kind"] == "h" else cs).append((int(f["i"]), int(f["a"])))
        total = total + make_monomial(hs, cs, ctx).scale(fraction_from_json(term["coeff"]))
    return total


def monomial_from_text(text: str, ctx: AlgebraContext) -> Monomial:
    """The canonical monomial named by ``text`` (sign dropped)."""
    x = parse_element(text, ctx)
    if len(x) != 1:
        raise ValidationError(f"{text!r} is not a single nonzero monomial")
    return next(iter(x.terms))

