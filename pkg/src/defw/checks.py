"""Property suites shared by ``defw verify`` and the test-suite.

Every check returns a :class:`CheckResult`; nothing here raises on a
failed property, so a sweep always reports every outcome.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import cohomology as coh
from .algebra import AlgebraContext, Element, Variant, apply_rho, enumerate_basis, make_monomial
from .derivations import derivation
from .invariants import (Cprime_kl, c_kl, check_ad_invariance, chern_coefficients, from_block, mat_mul,
                         random_invertible, random_trunc, tau_coefficients, to_block)
from .linalg import compose, identity, kernel
from .quotients import IdealVariant, ideal_slice, is_in_ideal


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int = 0
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "cases": self.cases}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.bad: str | None = None
        self.details: dict = {}

    def check(self, ok: bool, witness) -> bool:
        self.cases += 1
        if not ok and self.bad is None:
            self.bad = witness() if callable(witness) else str(witness)
        return ok

    def result(self) -> CheckResult:
        return CheckResult(self.name, self.bad is None, self.cases, self.bad, self.details)


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    trials: int = 500
    max_degree: int = 8
    max_order: int = 5
    q2_max_degree: int = 6
    q2_max_order: int = 3
    invariant_trials: int = 100


# ---------------------------------------------------------------- random elements


def random_monomial(rng: random.Random, ctx: AlgebraContext, max_order: int = 4,
                    max_h: int = 3, max_c: int = 3) -> Element:
    while True:
        hs = [(rng.randint(1, ctx.q), rng.randint(0, max_order)) for _ in range(rng.randint(0, max_h))]
        cs = [(rng.randint(1, ctx.q), rng.randint(0, max_order)) for _ in range(rng.randint(0, max_c))]
        x = make_monomial(hs, cs, ctx)
        if x:
            return x


def random_element(rng: random.Random, ctx: AlgebraContext, terms: int = 3, **kw) -> Element:
    x = Element.zero(ctx)
    for _ in range(rng.randint(1, terms)):
        x = x + random_monomial(rng, ctx, **kw).scale(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return x


def random_type_element(rng: random.Random, ctx: AlgebraContext, a: int, b: int, max_order: int = 4) -> Element:
    """Homogeneous-in-type element (q = 1) with a h-factors and b c-factors."""
    x = Element.zero(ctx)
    for _ in range(rng.randint(1, 3)):
        hs = [(1, rng.randint(0, max_order)) for _ in range(a)]
        cs = [(1, rng.randint(0, max_order)) for _ in range(b)]
        x = x + make_monomial(hs, cs, ctx).scale(rng.randint(-3, 3))
    return x


# ---------------------------------------------------------------- derivation identities


def _ctx(q: int) -> AlgebraContext:
    return AlgebraContext(q)


def check_d_squared(cfg: VerifyConfig) -> CheckResult:
    t = _Tally("d squared is zero")
    rng = random.Random(cfg.seed)
    for _ in range(cfg.trials):
        ctx = _ctx(rng.randint(1, 3))
        d = derivation("d", ctx)
        x = random_element(rng, ctx)
        t.check(not d(d(x)), lambda: str(x))
    return t.result()


def check_order_commutator(cfg: VerifyConfig) -> CheckResult:
    """sigma delta - delta sigma = order, on monomials."""
    t = _Tally("sigma delta - delta sigma = order")
    rng = random.Random(cfg.seed + 1)
    for _ in range(cfg.trials):
        ctx = _ctx(rng.randint(1, 3))
        dl, sg = derivation("delta", ctx), derivation("sigma", ctx)
        x = random_monomial(rng, ctx, max_order=6)
        m = next(iter(x.terms))
        t.check(sg(dl(x)) - dl(sg(x)) == x.scale(m.order), lambda: str(x))
    return t.result()


def check_length_commutator(cfg: VerifyConfig) -> CheckResult:
    """sigma' delta - delta sigma' = length, on monomials."""
    t = _Tally("sigma' delta - delta sigma' = length")
    rng = random.Random(cfg.seed + 2)
    for _ in range(cfg.trials):
        ctx = _ctx(rng.randint(1, 3))
        dl, sp = derivation("delta", ctx), derivation("sigma_prime", ctx)
        x = random_monomial(rng, ctx, max_order=6)
        m = next(iter(x.terms))
        t.check(sp(dl(x)) - dl(sp(x)) == x.scale(m.length), lambda: str(x))
    return t.result()


def check_K_homotopy(cfg: VerifyConfig) -> CheckResult:
    t = _Tally("delta_i = K_i d + d K_i and delta = K d + d K")
    rng = random.Random(cfg.seed + 3)
    for _ in range(cfg.trials):
        ctx = _ctx(rng.randint(1, 3))
        d = derivation("d", ctx)
        x = random_element(rng, ctx)
        pairs = [(derivation("delta", ctx), derivation("K", ctx))]
        pairs += [(derivation("delta", ctx, i), derivation("K", ctx, i)) for i in range(1, ctx.q + 1)]
        for dl, k in pairs:
            t.check(dl(x) == k(d(x)) + d(k(x)), lambda: f"{k.name} on {x}")
    return t.result()


def check_K_norm(cfg: VerifyConfig) -> CheckResult:
    t = _Tally("norm of K(phi) >= norm(phi) - 1")
    rng = random.Random(cfg.seed + 4)
    for _ in range(cfg.trials):
        ctx = _ctx(rng.randint(1, 3))
        x = random_monomial(rng, ctx)
        n = next(iter(x.terms)).norm
        for m in derivation("K", ctx)(x).terms:
            t.check(m.norm >= n - 1, lambda: f"{x} -> {m}")
    return t.result()


def check_L_homotopy(cfg: VerifyConfig) -> CheckResult:
    t = _Tally("(1+b) omega = L d omega + d L omega on type (1,b)")
    rng = random.Random(cfg.seed + 5)
    ctx = _ctx(1)
    d, L = derivation("d", ctx), derivation("L", ctx)
    for _ in range(cfg.trials):
        b = rng.randint(0, 4)
        x = random_type_element(rng, ctx, 1, b)
        t.check(x.scale(1 + b) == L(d(x)) + d(L(x)), lambda: str(x))
    return t.result()


def check_d_delta_commute(cfg: VerifyConfig) -> CheckResult:
    t = _Tally("d delta = delta d")
    rng = random.Random(cfg.seed + 6)
    for _ in range(cfg.trials):
        ctx = _ctx(rng.randint(1, 3))
        d, dl = derivation("d", ctx), derivation("delta", ctx)
        x = random_element(rng, ctx)
        t.check(d(dl(x)) == dl(d(x)), lambda: str(x))
    return t.result()


# ---------------------------------------------------------------- ideal stability


def _slice_grid(q: int, max_degree: int, max_order: int):
    for degree in range(2, max_degree + 1):
        for order in range(max_order + 1):
            yield degree, order


def check_ideal_stability(cfg: VerifyConfig, q: int) -> CheckResult:
    """d, delta, sigma map I and I' slices into the ideal; sigma' maps I' into I'."""
    t = _Tally(f"ideal stability (q={q})")
    ctx = _ctx(q)
    ops = {
        IdealVariant.I: ("d", "delta", "sigma"),
        IdealVariant.I_PRIME: ("d", "delta", "sigma", "sigma_prime"),
        IdealVariant.I_PLUS: ("d",),
    }
    max_deg = cfg.max_degree if q == 1 else cfg.q2_max_degree
    max_ord = cfg.max_order if q == 1 else cfg.q2_max_order
    for variant, names in ops.items():
        for degree, order in _slice_grid(q, max_deg - 1, max_ord - 1):
            for g in ideal_slice(variant, ctx, degree, order).rows():
                for name in names:
                    y = derivation(name, ctx)(g)
                    t.check(is_in_ideal(y, variant), lambda: f"{name} of {g} leaves {variant.value}")
    return t.result()


def find_sigma_prime_witness(q: int = 2, max_degree: int = 4, max_order: int = 2):
    """An element of I whose sigma' image is not in I, or None."""
    ctx = _ctx(q)
    sp = derivation("sigma_prime", ctx)
    for degree, order in _slice_grid(q, max_degree, max_order):
        for m in enumerate_basis(ctx, degree, order):
            if m.norm > q:
                x = Element.from_monomial(m, ctx)
                if not is_in_ideal(sp(x), IdealVariant.I):
                    return x, sp(x)
    return None


def check_sigma_prime_witness(cfg: VerifyConfig) -> CheckResult:
    t = _Tally("sigma' does not preserve I at q=2")
    hit = find_sigma_prime_witness(2)
    t.check(hit is not None, "no witness found at degree <= 4, order <= 2")
    if hit:
        t.details = {"element": str(hit[0]), "image": str(hit[1])}
    return t.result()


def check_ideal_inclusions(cfg: VerifyConfig, q: int) -> CheckResult:
    name = "I = I' at q=1 and I+ in I' in I" if q == 1 else f"I+ in I' in I (q={q})"
    t = _Tally(name)
    ctx = _ctx(q)
    max_deg = cfg.max_degree if q == 1 else cfg.q2_max_degree
    max_ord = cfg.max_order if q == 1 else cfg.q2_max_order
    for degree, order in _slice_grid(q, max_deg, max_ord):
        i = ideal_slice(IdealVariant.I, ctx, degree, order)
        ip = ideal_slice(IdealVariant.I_PRIME, ctx, degree, order)
        pl = ideal_slice(IdealVariant.I_PLUS, ctx, degree, order)
        t.check(ip.contains_space(pl), f"I+ not in I' at ({degree},{order})")
        t.check(i.contains_space(ip), f"I' not in I at ({degree},{order})")
        if q == 1:
            t.check(i.echelon == ip.echelon, f"I != I' at ({degree},{order})")
    return t.result()


# ---------------------------------------------------------------- structure of H(D^inf W_q)


def _is_identity(m: list, n: int) -> bool:
    return m == identity(n)


def _zero_map(m: list) -> bool:
    return all(not col for col in m)


def _mat_eq(a: list, b: list) -> bool:
    return all(x == y for x, y in zip(a, b)) and len(a) == len(b)


def check_d_descends(cfg: VerifyConfig, q: int, variant: Variant = Variant.W) -> CheckResult:
    t = _Tally(f"induced d squares to zero (q={q}, {variant.value})")
    ctx = AlgebraContext(q, None, variant)
    max_deg = cfg.max_degree if q == 1 else cfg.q2_max_degree
    max_ord = cfg.max_order if q == 1 else cfg.q2_max_order
    for order in range(max_ord + 1):
        for degree in range(max_deg):
            m = compose(coh.d_matrix(ctx, degree + 1, order), coh.d_matrix(ctx, degree, order))
            t.check(_zero_map(m), f"d^2 != 0 at ({degree},{order})")
    return t.result()


def check_projectors(cfg: VerifyConfig, q: int) -> CheckResult:
    """Completeness, orthogonal idempotence and eigenvalues of p_{m,k}."""
    t = _Tally(f"projector algebra p_(m,k) (q={q})")
    ctx = _ctx(q)
    max_deg = cfg.max_degree if q == 1 else cfg.q2_max_degree
    max_ord = cfg.max_order if q == 1 else cfg.q2_max_order
    for k in range(1, max_ord + 1):
        for degree in range(max_deg + 1):
            n = coh.quotient_piece(ctx, degree, k).dim
            if not n:
                continue
            ps = [coh.projector_matrix(ctx, m, k, degree) for m in range(1, k + 1)]
            total = [{} for _ in range(n)]
            for p in ps:
                for j in range(n):
                    for i, v in p[j].items():
                        s = total[j].get(i, 0) + v
                        if s:
                            total[j][i] = s
                        else:
                            total[j].pop(i, None)
            where = f"order {k}, degree {degree}"
            t.check(_is_identity(total, n), f"sum of projectors != id at {where}")
            ds = coh.delta_sigma_matrix(ctx, degree, k)
            for a, pa in enumerate(ps, start=1):
                for b, pb in enumerate(ps, start=1):
                    prod = compose(pa, pb)
                    ok = _mat_eq(prod, pa) if a == b else _zero_map(prod)
                    t.check(ok, f"p_{a} p_{b} wrong at {where}")
                lam = coh.lambda_mk(a, k)
                lhs = compose(ds, pa)
                rhs = [{i: lam * v for i, v in col.items()} if lam else {} for col in pa]
                t.check(_mat_eq(lhs, rhs), f"delta sigma p_{a} != lambda p_{a} at {where}")
    return t.result()


def check_eigen_shift(cfg: VerifyConfig, q: int) -> CheckResult:
    """sigma: E(lam, k) -> E(lam-k+1, k-1), and (1/lam) delta inverts it for lam != 0."""
    t = _Tally(f"sigma shift and delta inverse on eigenspaces (q={q})")
    ctx = _ctx(q)
    sg, dl = derivation("sigma", ctx), derivation("delta", ctx)
    max_deg = cfg.max_degree if q == 1 else cfg.q2_max_degree
    max_ord = cfg.max_order if q == 1 else cfg.q2_max_order
    for k in range(1, max_ord + 1):
        for degree in range(max_deg + 1):
            here = coh.quotient_piece(ctx, degree, k)
            below = coh.quotient_piece(ctx, degree, k - 1)
            dims = 0
            for lam in coh.eigenvalues(k):
                e = coh.eigenspace_E(ctx, lam, degree, k)
                dims += e.rank
                target_lam = lam - k + 1
                target = coh.eigenspace_E(ctx, target_lam, degree, k - 1) if k >= 1 else None
                for v in e.rows():
                    x = here.element(v)
                    s = sg(x)
                    sv = below.coords(s)
                    t.check(target.contains(sv), f"sigma leaves E({target_lam}) at ({degree},{k}): {x}")
                    if lam:
                        back = here.coords(dl(s).scale(1 / lam))
                        t.check(back == here.coords(x), f"(1/lam) delta sigma != id at ({degree},{k}): {x}")
                        again = below.coords(sg(dl(s)).scale(1 / lam))
                        t.check(again == sv, f"(1/lam) sigma delta != id on sigma(E) at ({degree},{k})")
            t.check(dims == here.dim, f"eigenspaces do not span the piece at ({degree},{k})")
    return t.result()


def check_F_double_entry(cfg: VerifyConfig, q: int) -> CheckResult:
    t = _Tally(f"F(lambda) via cochains matches eigenspaces on H (q={q})")
    ctx = _ctx(q)
    max_deg = cfg.max_degree if q == 1 else cfg.q2_max_degree
    max_ord = cfg.max_order if q == 1 else cfg.q2_max_order
    for k in range(max_ord + 1):
        for degree in range(max_deg + 1):
            t.check(coh.check_F_lambda_double_entry(ctx, degree, k), f"mismatch at ({degree},{k})")
    return t.result()


def delta_rank_on_cohomology(ctx: AlgebraContext, degree: int, order: int) -> tuple[int, int]:
    """(dim H, rank of induced delta on it)."""
    h = coh.cohomology(ctx, degree, order)
    if not h.dimension:
        return 0, 0
    up = coh.cohomology(ctx, degree, order + 1)
    dl = derivation("delta", ctx)
    cols = coh.induced_on_cohomology(h, up, dl)
    vecs = [{i: a for i, a in enumerate(col) if a} for col in cols]
    return h.dimension, h.dimension - len(kernel(vecs, up.dimension))


def check_delta_injective(cfg: VerifyConfig, q: int, variant: Variant = Variant.W) -> CheckResult:
    """delta is injective on H in positive degree (orders >= 1 unless the primed algebra)."""
    t = _Tally(f"delta injective on cohomology (q={q}, {variant.value})")
    ctx = AlgebraContext(q, None, variant)
    primed = ctx.quotient_variant() is Variant.W_PRIME or q == 1
    max_deg = cfg.max_degree if q == 1 else cfg.q2_max_degree
    max_ord = cfg.max_order if q == 1 else cfg.q2_max_order
    for order in range(0 if primed else 1, max_ord):
        for degree in range(1, max_deg + 1):
            dim, rank = delta_rank_on_cohomology(ctx, degree, order)
            t.check(dim == rank, f"delta has rank {rank} < {dim} at ({degree},{order})")
    return t.result()


# ---------------------------------------------------------------- rigidity of restricted classes


def rigidity_certificate(phi: Element) -> tuple[bool, bool]:
    """(rho K d phi in I_1, delta rho phi - d rho K phi in I_1) for a cocycle phi of W_2^+."""
    ctx2 = phi.ctx
    d2, k2 = derivation("d", ctx2), derivation("K", ctx2)
    ctx1 = AlgebraContext(1)
    d1, dl1 = derivation("d", ctx1), derivation("delta", ctx1)
    a = apply_rho(k2(d2(phi)), ctx1)
    b = dl1(apply_rho(phi, ctx1)) - d1(apply_rho(k2(phi), ctx1))
    return is_in_ideal(a, IdealVariant.I), is_in_ideal(b, IdealVariant.I)


def check_rigidity(cfg: VerifyConfig, max_degree: int = 7, max_order: int = 2) -> CheckResult:
    """Restrictions of W_2^+ cocycles to q = 1 have delta-trivial classes."""
    t = _Tally("restricted W_2^+ cocycles are formally rigid")
    ctx2 = AlgebraContext(2, None, Variant.W_PLUS)
    ctx1 = AlgebraContext(1)
    dl1 = derivation("delta", ctx1)
    nonzero = 0
    for order in range(max_order + 1):
        for degree in range(1, max_degree + 1):
            h2 = coh.cohomology(ctx2, degree, order)
            target = coh.cohomology(ctx1, degree, order + 1)
            for v in h2.cocycles.rows():
                phi = h2.space.element(v)
                rho = apply_rho(phi, ctx1)
                if rho:
                    nonzero += 1
                t.check(target.is_coboundary(dl1(rho)), lambda: f"delta rho({phi}) is not exact")
                ok_a, ok_b = rigidity_certificate(phi)
                t.check(ok_a and ok_b, lambda: f"homotopy certificate fails for {phi}")
    t.details = {"cocycles_with_nonzero_restriction": nonzero}
    return t.result()


# ---------------------------------------------------------------- type (1, b)


def check_type_1b(cfg: VerifyConfig, max_order: int = 6, max_degree: int = 8) -> CheckResult:
    t = _Tally("type (1,b) cohomology is the GV line")
    ctx = AlgebraContext(1)
    dl = derivation("delta", ctx)
    gv = make_monomial([(1, 0)], [(1, 0)], ctx)
    for order in range(max_order + 1):
        for b in range(0, (max_degree - 1) // 2 + 1):
            h = coh.type_filtered_cohomology(ctx, 1 + 2 * b, order, (1, b))
            if b != 1:
                t.check(h.dimension == 0, f"type (1,{b}) order {order} has dim {h.dimension}")
            else:
                rep = dl.power(gv, order)
                t.check(h.dimension == 1 and not h.cls(rep).is_zero,
                        f"type (1,1) order {order}: dim {h.dimension}")
    return t.result()


# ---------------------------------------------------------------- invariants of S^r


def check_invariants(cfg: VerifyConfig) -> CheckResult:
    t = _Tally("S^r invariants: blocks, tau, Chern, Ad-invariance")
    rng = random.Random(cfg.seed + 12)
    trials = 0
    while trials < cfg.invariant_trials:
        q, r = rng.randint(1, 3), rng.randint(0, 3)
        x = random_trunc(rng, q, r)
        y = random_trunc(rng, q, r)
        g = random_invertible(rng, q, r)
        trials += 1
        t.check(from_block(to_block(x), q) == x, "block round trip")
        t.check(to_block(x * y) == mat_mul(to_block(x), to_block(y)), "block product")
        for k in range(0, 4):
            taus = tau_coefficients(x, k)
            t.check(taus == tuple(Cprime_kl(x, k, l).rational_part for l in range(r + 1)), f"tau_{k} identity")
        for k in range(1, q + 1):
            t.check(c_kl(x, k, 0).rational_part == chern_coefficients(x, k)[0], f"c_({k},0) vs Chern")
            for l in range(r + 1):
                t.check(check_ad_invariance(k, l, x, g), lambda: f"Ad-invariance k={k} l={l} X={x} g={g}")
    t.details = {"trials": trials, "seed": cfg.seed + 12}
    return t.result()


# ---------------------------------------------------------------- registry


def derivation_suite(cfg: VerifyConfig) -> list[CheckResult]:
    return [check_d_squared(cfg), check_order_commutator(cfg), check_length_commutator(cfg),
            check_K_homotopy(cfg), check_K_norm(cfg), check_L_homotopy(cfg), check_d_delta_commute(cfg)]


def ideal_suite(cfg: VerifyConfig) -> list[CheckResult]:
    return [check_ideal_stability(cfg, 1), check_ideal_stability(cfg, 2), check_sigma_prime_witness(cfg),
            check_ideal_inclusions(cfg, 1), check_ideal_inclusions(cfg, 2)]


def structure_suite(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for q in (1, 2):
        out += [check_d_descends(cfg, q), check_projectors(cfg, q), check_eigen_shift(cfg, q),
                check_F_double_entry(cfg, q), check_delta_injective(cfg, q)]
    out.append(check_delta_injective(cfg, 2, Variant.W_PRIME))
    return out


SUITES: dict[str, Callable[[VerifyConfig], list[CheckResult]]] = {
    "derivations": derivation_suite,
    "ideals": ideal_suite,
    "structure": structure_suite,
    "rigidity": lambda cfg: [check_rigidity(cfg)],
    "type": lambda cfg: [check_type_1b(cfg)],
    "invariants": lambda cfg: [check_invariants(cfg)],
}
