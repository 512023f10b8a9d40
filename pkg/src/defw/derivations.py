"""Derivations of the free algebra from generator rules.

Every derivation used here sends a generator to a rational multiple of a
single generator (or to zero), so one Leibniz routine serves them all:
``d``, ``K_i``, ``K`` and ``L`` are signed (odd), ``delta``, ``delta_i``,
``sigma`` and ``sigma'`` are unsigned (even).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .algebra import C, H, AlgebraContext, Element, Generator, Monomial
from .errors import OrderOverflowError, UnsupportedContextError, ValidationError

Rule = Callable[[Generator], Optional[tuple[Fraction, Generator]]]

ONE = Fraction(1)


@dataclass(eq=False)
class Derivation:
    name: str
    rule: Rule
    signed: bool
    ctx: AlgebraContext
    strict: bool = True
    _cache: dict = field(default_factory=dict, repr=False)

    def image(self, g: Generator):
        out = self.rule(g)
        if out is None:
            return None
        coeff, new = out
        if not coeff:
            return None
        if self.ctx.r is not None and new.order > self.ctx.r:
            if self.strict:
                raise OrderOverflowError(f"{self.name}({g}) needs order {new.order} > r={self.ctx.r}")
            return None
        if new.order < 0:
            return None
        return coeff, new

    def on_monomial(self, m: Monomial) -> dict:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        out: dict[Monomial, Fraction] = {}
        hs, cs = m.hs, m.cs
        a = len(hs)
        for p, g in enumerate(hs):
            img = self.image(g)
            if img is None:
                continue
            coeff, new = img
            # odd prefix h_0..h_{p-1}
            if self.signed and p % 2:
                coeff = -coeff
            rest = hs[:p] + hs[p + 1:]
            if new.kind == C:
                key = Monomial(rest, tuple(sorted(cs + (new,))))
            else:
                if new in rest:
                    continue
                # new sits at slot p among the others; count odd factors it must cross
                pos = sum(1 for x in rest if x < new)
                if (pos - p) % 2:
                    coeff = -coeff
                key = Monomial(tuple(sorted(rest + (new,))), cs)
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        for p, g in enumerate(cs):
            img = self.image(g)
            if img is None:
                continue
            coeff, new = img
            # prefix = all h's (odd count a) and even c's
            if self.signed and a % 2:
                coeff = -coeff
            rest = cs[:p] + cs[p + 1:]
            if new.kind == C:
                key = Monomial(hs, tuple(sorted(rest + (new,))))
            else:
                if new in hs:
                    continue
                # new odd factor moves left past even c's (free) then into the h block from the end
                pos = sum(1 for x in hs if x < new)
                if (a - pos) % 2:
                    coeff = -coeff
                key = Monomial(tuple(sorted(hs + (new,))), rest)
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        self._cache[m] = out
        return out

    def __call__(self, x: Element) -> Element:
        if not x.ctx.compatible(self.ctx):
            raise ValidationError(f"{self.name} built for ({self.ctx}) applied to ({x.ctx})")
        out: dict[Monomial, Fraction] = {}
        for m, v in x.terms.items():
            for k, w in self.on_monomial(m).items():
                s = out.get(k, 0) + v * w
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Element._raw(out, x.ctx)

    def power(self, x: Element, n: int) -> Element:
        for _ in range(n):
            x = self(x)
        return x


def _d_rule(g: Generator):
    if g.kind == H:
        return ONE, Generator(C, g.index, g.order)
    return None


def _delta_rule(index: int | None):
    def rule(g: Generator):
        if index is not None and g.index != index:
            return None
        return ONE, Generator(g.kind, g.index, g.order + 1)

    return rule


def _sigma_rule(g: Generator):
    k = g.order
    return Fraction(k * (k - 1), 2), Generator(g.kind, g.index, k - 1)


def _sigma_prime_rule(g: Generator):
    k = g.order
    return Fraction(k), Generator(g.kind, g.index, k - 1)


def _k_rule(index: int | None):
    def rule(g: Generator):
        if g.kind == H:
            return None
        if index is not None and g.index != index:
            return None
        return ONE, Generator(H, g.index, g.order + 1)

    return rule


def _l_rule(g: Generator):
    if g.kind == C:
        return ONE, Generator(H, g.index, g.order)
    return None


def _check_index(ctx: AlgebraContext, i: int):
    if not 1 <= i <= ctx.q:
        raise ValidationError(f"index {i} outside [1, {ctx.q}]")


def _ctx_key(ctx: AlgebraContext) -> AlgebraContext:
    return AlgebraContext(ctx.q, ctx.r)


@lru_cache(maxsize=None)
def _build(name: str, ctx: AlgebraContext, index: int | None, strict: bool) -> Derivation:
    if name == "d":
        return Derivation("d", _d_rule, True, ctx, strict)
    if name == "delta":
        label = "delta" if index is None else f"delta_{index}"
        return Derivation(label, _delta_rule(index), False, ctx, strict)
    if name == "sigma":
        return Derivation("sigma", _sigma_rule, False, ctx, strict)
    if name == "sigma_prime":
        return Derivation("sigma'", _sigma_prime_rule, False, ctx, strict)
    if name == "K":
        label = "K" if index is None else f"K_{index}"
        return Derivation(label, _k_rule(index), True, ctx, strict)
    if name == "L":
        return Derivation("L", _l_rule, True, ctx, strict)
    raise ValidationError(f"unknown derivation {name!r}")


def derivation(name: str, ctx: AlgebraContext, index: int | None = None, strict: bool = True) -> Derivation:
    """Memoized derivation object; ``strict=False`` truncates order overflow to zero."""
    if index is not None:
        _check_index(ctx, index)
    if name == "L" and ctx.q != 1:
        raise UnsupportedContextError("L is only defined for q = 1")
    return _build(name, _ctx_key(ctx), index, strict)


def apply_d(x: Element) -> Element:
    return derivation("d", x.ctx)(x)


def apply_delta(x: Element, strict: bool = True) -> Element:
    return derivation("delta", x.ctx, strict=strict)(x)


def apply_delta_i(x: Element, i: int, strict: bool = True) -> Element:
    return derivation("delta", x.ctx, i, strict)(x)


def apply_sigma(x: Element) -> Element:
    return derivation("sigma", x.ctx)(x)


def apply_sigma_prime(x: Element) -> Element:
    return derivation("sigma_prime", x.ctx)(x)


def apply_K(x: Element, strict: bool = True) -> Element:
    return derivation("K", x.ctx, strict=strict)(x)


def apply_K_i(x: Element, i: int, strict: bool = True) -> Element:
    return derivation("K", x.ctx, i, strict)(x)


def apply_L(x: Element) -> Element:
    return derivation("L", x.ctx)(x)


def power(fn: Callable[[Element], Element], x: Element, n: int) -> Element:
    for _ in range(n):
        x = fn(x)
    return x


DERIVATIONS = {
    "d": apply_d,
    "delta": apply_delta,
    "sigma": apply_sigma,
    "sigma_prime": apply_sigma_prime,
    "K": apply_K,
    "L": apply_L,
}
