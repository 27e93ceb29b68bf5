"""Command line front end.

Subcommands: gens, transvect, order, qexp, verify, character, hp.  Output is
deterministic for a fixed configuration; the process exits 0 only if every
requested verification passed, 1 on a failed verification, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import sys

from .exact import format_rational
from . import cache as cachemod
from .covariant import (
    GENERATOR_NAMES, eval_expression, generators, parse_expression, transvectant,
)
from . import fourier, hilbert, siegel, vanishing
from .character import SymplecticMatrix, epsilon, epsilon_perm


def _load_expression(token):
    """A generator name, inline expression, or path to an expression file."""
    import os
    if os.path.isfile(token):
        with open(token) as fh:
            return fh.read()
    return token


def cmd_gens(args):
    table = generators()
    for name in GENERATOR_NAMES:
        cov = table[name]
        print(f"{name:8s} bidegree ({cov.a:2d},{cov.b:2d})  "
              f"{len(cov.poly.terms):5d} terms")
        if args.cache_dir:
            from pathlib import Path
            d = Path(args.cache_dir)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"{name}.poly.txt").write_text(cov.poly.dumps())
    return 0


def cmd_transvect(args):
    table = generators()
    g = table[args.left] if args.left in table else eval_expression(
        _load_expression(args.left), table)
    h = table[args.right] if args.right in table else eval_expression(
        _load_expression(args.right), table)
    cov = transvectant(g, h, args.k)
    print(f"bidegree ({cov.a},{cov.b}), {len(cov.poly.terms)} terms")
    if args.full:
        sys.stdout.write(cov.poly.dumps())
    return 0


def cmd_order(args):
    expr = _load_expression(args.covariant)
    monos = parse_expression(expr)
    cov = eval_expression(monos)
    e3 = vanishing.e3_order(cov)
    a11 = vanishing.a11_order(cov)
    print(f"a={cov.a}, e3={e3}, ord_A11={a11}")
    return 0


def _named_series(name, n4):
    if name == "chi5":
        return {"chi5": fourier.chi5(n4)}
    if name == "chi10":
        return {"chi10": fourier.chi10(n4)}
    if name == "chi30":
        return {"chi30": fourier.chi30(n4)}
    if name == "chi6_3":
        v = fourier.chi63(n4)
        lam = fourier.chi63_lambda(n4)
        return {f"chi6_3.c{i}": c for i, c in enumerate(v.components)}, {"lambda": lam}
    for case, specs in siegel.named_form_specs().items():
        for sp in specs:
            if sp.name == name:
                F = siegel.build_named_form(sp, n4)
                return {f"{name}.c{i}": c for i, c in enumerate(F.components)}
    raise SystemExit(f"unknown form name {name!r}")


def cmd_qexp(args):
    out = _named_series(args.form, args.prec)
    extra = {}
    if isinstance(out, tuple):
        out, extra = out
    for name in sorted(out):
        series = out[name]
        text = cachemod.serialize_series(name, series, extra or None)
        sys.stdout.write(text)
        if args.cache:
            cachemod.store_series(name, series, args.cache_dir, extra or None)
    return 0


def cmd_verify(args):
    cases = list(siegel.CASE_IDS) + ["j10_odd", "j10_even"] \
        if args.case == "all" else [args.case]
    failed = 0
    for case in sorted(cases, key=lambda c: (int(c[1:].split("_")[0]), c)):
        rep = siegel.verify_case(case, n4=args.prec, extended=args.extended)
        lines = render_report(rep, args.format)
        print(lines)
        if not rep["ok"]:
            failed += 1
        if args.report:
            with open(args.report, "a") as fh:
                fh.write(lines + "\n")
    return 1 if failed else 0


def render_report(rep, fmt="text"):
    header = f"case {rep['case']}"
    if "n4" in rep:
        header += f" (completeness bound {rep['n4']})"
    header += ": " + ("PASS" if rep["ok"] else "FAIL")
    lines = [header]
    for label, ok, detail in rep.get("checks", []):
        mark = "-" if ok is None else ("x" if ok else "!")
        if fmt == "markdown":
            box = " " if ok is None else ("x" if ok else " ")
            lines.append(f"- [{box}] {label}" + (f" — {detail}" if detail else ""))
        else:
            lines.append(f"  [{mark}] {label}" + (f": {detail}" if detail else ""))
    return "\n".join(lines)


def cmd_character(args):
    rows = []
    for chunk in args.matrix.split(";"):
        rows.append([int(x) for x in chunk.replace(",", " ").split()])
    gamma = SymplecticMatrix(rows)
    val, path = epsilon(gamma, with_path=True)
    assert val == epsilon_perm(gamma)
    print(f"epsilon = {val:+d}")
    print("reduction path: " + " -> ".join(path))
    return 0


def cmd_hp(args):
    series = hilbert.hp_series(args.j, args.parity)
    print(hilbert.format_numerator(series.numerator_poly()))
    if args.expand is not None:
        coeffs = series.expand(args.expand)
        print(" ".join(f"t^{i}:{c}" for i, c in enumerate(coeffs) if c))
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="sexticforms",
        description=("Covariants of binary sextics, their Fourier expansions "
                     "as degree-2 Siegel modular forms with character, and "
                     "verification of the free-module structure theorems."))
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gens", help="build the 26 generating covariants")
    g.add_argument("--cache-dir", help="write serialized polynomials here")
    g.set_defaults(fn=cmd_gens)

    t = sub.add_parser("transvect", help="transvectant of two covariants")
    t.add_argument("left")
    t.add_argument("right")
    t.add_argument("k", type=int)
    t.add_argument("--full", action="store_true", help="print the polynomial")
    t.set_defaults(fn=cmd_transvect)

    o = sub.add_parser("order", help="vanishing orders of a covariant")
    o.add_argument("--covariant", required=True,
                   help="generator name, expression, or expression file")
    o.set_defaults(fn=cmd_order)

    q = sub.add_parser("qexp", help="dump a Fourier expansion in cache format")
    q.add_argument("form", help="chi5, chi10, chi30, chi6_3, or a named form like F2_9")
    q.add_argument("--prec", type=int, default=32,
                   help="completeness bound (p4+q4 <= prec)")
    q.add_argument("--cache", action="store_true", help="also store to the cache")
    q.add_argument("--cache-dir")
    q.set_defaults(fn=cmd_qexp)

    v = sub.add_parser("verify", help="verify a structure theorem case")
    v.add_argument("case", choices=list(siegel.CASE_IDS) + ["j10_odd", "j10_even", "all"])
    v.add_argument("--prec", type=int, default=None)
    v.add_argument("--extended", action="store_true",
                   help="full acceptance truncations (hours for j6/j8)")
    v.add_argument("--report", help="append the report to this file")
    v.add_argument("--format", choices=("text", "markdown"), default="text")
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("character", help="order-2 character of a symplectic matrix")
    c.add_argument("--matrix", required=True,
                   help="four rows separated by ';', entries by spaces or commas")
    c.set_defaults(fn=cmd_character)

    h = sub.add_parser("hp", help="Hilbert-Poincare numerator for (j, parity)")
    h.add_argument("j", type=int, choices=(0, 2, 4, 6, 8, 10, 12))
    h.add_argument("parity", choices=("odd", "even"))
    h.add_argument("--expand", type=int, default=None,
                   help="also print series coefficients through this order")
    h.set_defaults(fn=cmd_hp)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    n4 = getattr(args, "prec", None)
    if n4 is not None and n4 < 8:
        print("completeness bound must be at least 8", file=sys.stderr)
        return 2
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
