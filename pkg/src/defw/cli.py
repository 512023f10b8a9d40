"""The ``defw`` command line.

Exit status: 0 on success, 1 when a verified property fails, 2 on usage errors.
Output is deterministic for a fixed configuration; wall time appears only with
``--timing``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import AlgebraContext, Variant
from .errors import DefwError
from .textio import element_to_json, fraction_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- argument types


def parse_range(text: str) -> tuple[int, int]:
    """``N`` or ``A..B`` (inclusive) into a nonempty (lo, hi)."""
    try:
        if ".." in text:
            lo, hi = (int(s) for s in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return lo, hi


def parse_r(text: str) -> int | None:
    if text == "inf":
        return None
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--r takes a positive integer or 'inf', got {text!r}") from None
    if r < 1:
        raise argparse.ArgumentTypeError("--r must be positive")
    return r


def parse_type(text: str) -> tuple[int, int]:
    try:
        a, b = (int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--type takes a,b; got {text!r}") from None
    if a < 0 or b < 0:
        raise argparse.ArgumentTypeError("type entries must be non-negative")
    return a, b


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# ---------------------------------------------------------------- config and records


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: int
    r: int | None
    variant: Variant
    degree: tuple[int, int]
    order: tuple[int, int]
    seed: int
    fmt: str
    out: str | None

    @property
    def ctx(self) -> AlgebraContext:
        return AlgebraContext(self.q, self.r, self.variant)

    def to_json(self) -> dict:
        return {"q": self.q, "r": "inf" if self.r is None else self.r, "variant": self.variant.value,
                "degree": list(self.degree), "order": list(self.order), "seed": self.seed, "format": self.fmt}


def make_record(command: str, config: dict, seed: int, results) -> dict:
    return {"command": command, "config": config, "seed": seed, "engine_version": __version__, "results": results}


def dump_json(record: dict) -> str:
    return json.dumps(record, indent=2, sort_keys=True) + "\n"


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DEFW_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items: list) -> list:
    """Map over grid cells, optionally threaded; the result keeps input order."""
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _frac_text(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# ---------------------------------------------------------------- cohomology


def cmd_cohomology(args, cfg: RunConfig) -> tuple[dict, int]:
    from .cohomology import F_lambda, cohomology, type_filtered_cohomology

    lam = args.f_lambda
    typ = args.type
    if lam is not None and cfg.r is not None:
        raise UsageError("--f-lambda needs --r inf (delta sigma does not act on a truncated algebra)")
    if typ is not None and cfg.q != 1:
        raise UsageError("--type is only defined for --q 1")
    degrees = list(range(cfg.degree[0], cfg.degree[1] + 1))
    if typ is not None:
        d_typ = typ[0] + 2 * typ[1]
        if d_typ not in degrees:
            raise UsageError(f"type {typ[0]},{typ[1]} lives in degree {d_typ}, outside --degree")
        degrees = [d_typ]
    cells = [(d, o) for o in range(cfg.order[0], cfg.order[1] + 1) for d in degrees]
    ctx = cfg.ctx
    length = None if typ is None else typ[0] + typ[1]

    def run(cell):
        d, o = cell
        if lam is not None:
            piece = F_lambda(ctx, lam, d, o, length)
        elif typ is not None:
            piece = type_filtered_cohomology(ctx, d, o, typ)
        else:
            piece = cohomology(ctx, d, o)
        return {"degree": d, "order": o, "dimension": piece.dimension,
                "basis": [element_to_json(b) for b in piece.basis]}

    pieces = ordered_map(run, cells)
    config = cfg.to_json()
    config["f_lambda"] = None if lam is None else fraction_to_json(lam)
    config["type"] = None if typ is None else list(typ)
    return make_record("cohomology", config, cfg.seed, {"pieces": pieces}), EXIT_OK


def _render_cohomology(record: dict, fmt: str) -> str:
    rows = record["results"]["pieces"]
    if fmt == "tsv":
        out = ["degree\torder\tdimension\tbasis"]
        out += [f"{p['degree']}\t{p['order']}\t{p['dimension']}\t" + "; ".join(b["text"] for b in p["basis"])
                for p in rows]
        return "\n".join(out) + "\n"
    out = ["| degree | order | dimension | basis |", "|---|---|---|---|"]
    out += [f"| {p['degree']} | {p['order']} | {p['dimension']} | "
            + ", ".join(f"`{b['text']}`" for b in p["basis"]) + " |" for p in rows]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- verify


def cmd_verify(args, cfg: RunConfig) -> tuple[dict, int]:
    from .checks import SUITES, VerifyConfig

    names = list(SUITES) if args.suite == "all" else [args.suite]
    vc = VerifyConfig(seed=cfg.seed, trials=args.trials, max_degree=cfg.degree[1], max_order=cfg.order[1],
                      invariant_trials=args.invariant_trials)
    suites = ordered_map(lambda n: (n, SUITES[n](vc)), names)
    results = [dict(r.to_json(), suite=n) for n, rs in suites for r in rs]
    ok = all(r["passed"] for r in results)
    config = cfg.to_json()
    config.update(suite=args.suite, trials=args.trials, invariant_trials=args.invariant_trials)
    record = make_record("verify", config, cfg.seed, {"all_passed": ok, "checks": results})
    return record, EXIT_OK if ok else EXIT_FAIL


def _render_verify(record: dict, fmt: str) -> str:
    rows = record["results"]["checks"]
    if fmt == "tsv":
        out = ["suite\tcheck\tresult\tcases\tcounterexample"]
        out += [f"{c['suite']}\t{c['name']}\t{'pass' if c['passed'] else 'FAIL'}\t{c['cases']}\t"
                f"{c.get('counterexample', '')}" for c in rows]
        return "\n".join(out) + "\n"
    out = [f"seed {record['seed']}", "", "| suite | check | result | cases |", "|---|---|---|---|"]
    out += [f"| {c['suite']} | {c['name']} | {'pass' if c['passed'] else 'FAIL'} | {c['cases']} |" for c in rows]
    bad = [c for c in rows if not c["passed"]]
    for c in bad:
        out += ["", f"counterexample for {c['name']}: `{c.get('counterexample')}`"]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- report-section10


def cmd_report(args, cfg: RunConfig) -> tuple[dict, int]:
    from .report import build_report

    if cfg.q != 1:
        raise UsageError("report-section10 is defined for --q 1 only")
    if cfg.r is not None:
        raise UsageError("report-section10 needs --r inf")
    return make_record("report-section10", cfg.to_json(), cfg.seed, build_report()), EXIT_OK


# ---------------------------------------------------------------- invariants


def _parse_x(text: str, q: int, r: int):
    from .invariants import TruncPolyMatrix

    try:
        raw = json.loads(text)
        coeffs = [[[Fraction(str(v)) for v in row] for row in a] for a in raw]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"--x must be a JSON list of r+1 q-by-q matrices: {exc}") from None
    if len(coeffs) != r + 1 or any(len(a) != q or any(len(row) != q for row in a) for a in coeffs):
        raise UsageError(f"--x must hold {r + 1} matrices of size {q}x{q}")
    return TruncPolyMatrix.from_lists(coeffs)


def cmd_invariants(args, cfg: RunConfig) -> tuple[dict, int]:
    from . import invariants as inv

    if cfg.r is None:
        raise UsageError("invariants needs a finite --r")
    config = cfg.to_json()
    config.update(mode=args.mode, normalization=args.normalization)
    if args.mode == "check":
        from .checks import VerifyConfig, check_invariants

        res = check_invariants(VerifyConfig(seed=cfg.seed, invariant_trials=args.trials))
        config["trials"] = args.trials
        rec = make_record("invariants", config, cfg.seed, {"all_passed": res.passed, "checks": [res.to_json()]})
        return rec, EXIT_OK if res.passed else EXIT_FAIL

    if args.x is None:
        raise UsageError("invariants eval needs --x")
    x = _parse_x(args.x, cfg.q, cfg.r)
    ks = [args.k] if args.k is not None else list(range(1, cfg.q + 1))
    ls = [args.l] if args.l is not None else list(range(cfg.r + 1))
    if any(not 1 <= k <= cfg.q for k in ks) or any(not 0 <= l <= cfg.r for l in ls):
        raise UsageError("need 1 <= k <= q and 0 <= l <= r")
    values = []
    for k in ks:
        chern = inv.chern_coefficients(x, k)
        tau = inv.tau_coefficients(x, k)
        blocks = inv.power_blocks(x, k)
        for l in ls:
            values.append({
                "k": k, "l": l,
                "c_kl": inv.c_kl(x, k, l, args.normalization).to_json(),
                "C_kl": inv.C_kl(x, k, l).to_json(),
                "Cprime_kl": inv.Cprime_kl(x, k, l).to_json(),
                "chern_t_coefficient": fraction_to_json(chern[l]),
                "tau_identity": tau[l] == inv.mat_trace(blocks[l]),
            })
    config.update(x=args.x, k=args.k, l=args.l)
    return make_record("invariants", config, cfg.seed, {"values": values}), EXIT_OK


def _render_invariants(record: dict, fmt: str) -> str:
    res = record["results"]
    if "checks" in res:
        return _render_verify({"seed": record["seed"],
                               "results": {"checks": [dict(c, suite="invariants") for c in res["checks"]]}}, fmt)
    val = lambda d: _frac_text(Fraction(int(d["rational_part"]["num"]), int(d["rational_part"]["den"])))
    if fmt == "tsv":
        out = ["k\tl\tc_kl\tpi_exponent\tCprime_kl"]
        out += [f"{v['k']}\t{v['l']}\t{val(v['c_kl'])}\t{v['c_kl']['pi_exponent']}\t{val(v['Cprime_kl'])}"
                for v in res["values"]]
        return "\n".join(out) + "\n"
    out = ["| k | l | c_kl | C'_kl |", "|---|---|---|---|"]
    out += [f"| {v['k']} | {v['l']} | {val(v['c_kl'])} (-1/2pi)^{v['c_kl']['pi_exponent']} | {val(v['Cprime_kl'])} |"
            for v in res["values"]]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- parser and main


def _common() -> argparse.ArgumentParser:
    # a fresh parent per verb: argparse shares parent actions, so set_defaults would leak
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=_positive, default=1)
    common.add_argument("--r", type=parse_r, default=None, help="jet order, an integer or 'inf' (default inf)")
    common.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.W.value)
    common.add_argument("--degree", type=parse_range, default=(0, 8), help="N or A..B")
    common.add_argument("--order", type=parse_range, default=(0, 0), help="N or A..B")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", dest="fmt", choices=["json", "md", "tsv"], default="json")
    common.add_argument("--out", default=None, help="output path (report-section10 writes PATH.md and PATH.json)")
    common.add_argument("--timing", action="store_true", help="add wall time to the record")
    return common


def build_parser() -> argparse.ArgumentParser:

    p = argparse.ArgumentParser(prog="defw", description="Exact cohomology of jet-deformed Weil algebras.")
    p.add_argument("--version", action="version", version=f"defw {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cohomology", parents=[_common()], help="dimensions and bases over a degree/order grid")
    c.add_argument("--type", type=parse_type, default=None, help="a,b (q = 1 only)")
    c.add_argument("--f-lambda", type=parse_fraction, default=None, help="eigenvalue of delta sigma, p/q")

    v = sub.add_parser("verify", parents=[_common()], help="run the property suites")
    v.add_argument("--suite", default="all",
                   choices=["all", "derivations", "ideals", "structure", "rigidity", "type", "invariants"])
    v.add_argument("--trials", type=_positive, default=500)
    v.add_argument("--invariant-trials", type=_positive, default=100)
    v.set_defaults(degree=(0, 8), order=(0, 5))

    sub.add_parser("report-section10", parents=[_common()], help="q = 1 low-order reference report")

    i = sub.add_parser("invariants", parents=[_common()], help="jet-order Chern invariants")
    i.add_argument("mode", choices=["eval", "check"])
    i.add_argument("--k", type=_positive, default=None)
    i.add_argument("--l", type=int, default=None)
    i.add_argument("--x", default=None, help='JSON list of r+1 q-by-q matrices, entries like "1/2"')
    i.add_argument("--normalization", choices=["literal", "derivative"], default="literal")
    i.add_argument("--trials", type=_positive, default=100)
    i.set_defaults(r=1)
    return p


COMMANDS = {
    "cohomology": (cmd_cohomology, _render_cohomology),
    "verify": (cmd_verify, _render_verify),
    "report-section10": (cmd_report, None),
    "invariants": (cmd_invariants, _render_invariants),
}


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    cfg = RunConfig(args.command, args.q, args.r, Variant(args.variant), args.degree, args.order,
                    args.seed, args.fmt, args.out)
    run, render = COMMANDS[args.command]
    start = time.perf_counter()
    try:
        record, status = run(args, cfg)
    except UsageError as exc:
        print(f"defw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DefwError as exc:
        print(f"defw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        record["wall_time_s"] = round(time.perf_counter() - start, 3)

    if args.command == "report-section10":
        from .report import render_markdown

        if args.out is not None:
            Path(args.out + ".json").write_text(dump_json(record), encoding="utf-8")
            Path(args.out + ".md").write_text(render_markdown(record["results"]), encoding="utf-8")
        else:
            _emit(dump_json(record) if args.fmt == "json" else render_markdown(record["results"]), None)
        return status

    _emit(dump_json(record) if args.fmt == "json" else render(record, args.fmt), args.out)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
