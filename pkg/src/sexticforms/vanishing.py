"""Vanishing orders of covariants along the exceptional divisor and A_{1,1}.

The sextics with a triple root are approached through the family

    g = (x^3 + v x + u) * h(x),      u = c^2 t^3,  v = c t^2,

with h a generic cubic (symbolic coefficients h0..h3) and c a free symbol.
Homogenizing with x = x1/x2 and reading off binomially normalized
coefficients a_i gives exact polynomials in t, c, h0..h3.  The order in t of
a covariant evaluated on this family is its order along the exceptional
divisor E3 of the triple-root resolution, and the modular form attached to a
covariant of bidegree (a, b) then vanishes along the product locus A_{1,1}
to order

    ord_{A11} = 2 * ord_{E3} - a.

Everything is computed fully symbolically; random specializations of (c, h)
exist only as a cross-check fast path.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache

from .exact import MultiPoly, Rational, comb
from .covariant import (
    AVARS, GENERATOR_RECIPES, GENERATOR_SCALE, Covariant, parse_expression,
    transvectant_weights,
)

FAM_VARS = ("t", "c", "h0", "h1", "h2", "h3", "x1", "x2")

INFINITE_ORDER = math.inf


class CuspidalFamily:
    """The substituted family sextic and its a-coordinates."""

    def __init__(self):
        V = FAM_VARS
        x = MultiPoly.variable(V, "x1")  # dehomogenized x lives in the x1 slot
        one = MultiPoly.const(V, 1)
        u = MultiPoly.monomial(V, 1, c=2, t=3)
        v = MultiPoly.monomial(V, 1, c=1, t=2)
        h = sum(
            (MultiPoly.monomial(V, 1, **{f"h{i}": 1}) * x ** i for i in range(1, 4)),
            MultiPoly.variable(V, "h0"),
        )
        self.cubic = h
        g = (x ** 3 + v * x + u) * h
        self.sextic_dehom = g
        # coefficient of x^(6-i) is a_i * C(6, i)
        i_x = FAM_VARS.index("x1")
        coeffs = [MultiPoly.zero(V) for _ in range(7)]
        for exps, coef in g.terms.items():
            d = exps[i_x]
            stripped = exps[:i_x] + (0,) + exps[i_x + 1:]
            coeffs[6 - d] = coeffs[6 - d] + MultiPoly(V, {stripped: coef})
        self.a_coords = {
            f"a{i}": coeffs[i].scale(Rational(1, comb(6, i))) for i in range(7)
        }

    def substitute(self, cov):
        """Covariant evaluated on the family: polynomial in t, c, h_i, x1, x2."""
        assignment = dict(self.a_coords)
        assignment["x1"] = MultiPoly.variable(FAM_VARS, "x1")
        assignment["x2"] = MultiPoly.variable(FAM_VARS, "x2")
        return cov.poly.subs(assignment)


@lru_cache(maxsize=1)
def family():
    return CuspidalFamily()


def _t_order(poly):
    d = poly.min_degree_in("t")
    return INFINITE_ORDER if d is None else d


def e3_order(cov):
    """Order along E3: minimum t-exponent of the covariant on the family.

    The zero polynomial gets the distinguished INFINITE_ORDER value (the
    covariant vanishes identically on the family).
    """
    return _t_order(family().substitute(cov))


def a11_order(cov):
    """Order along A_{1,1} of the modular form attached to the covariant."""
    return 2 * e3_order(cov) - cov.a


# -- fast path: generator recipes evaluated directly on the family ------

def _fam_x_components(poly, b):
    i1 = FAM_VARS.index("x1")
    i2 = FAM_VARS.index("x2")
    comps = [dict() for _ in range(b + 1)]
    for exps, coef in poly.terms.items():
        slot = exps[i2]
        comps[slot][exps[:i1] + (0, 0)] = coef
    return [MultiPoly(FAM_VARS, t) for t in comps]


def _fam_assemble(comps):
    b = len(comps) - 1
    i1 = FAM_VARS.index("x1")
    terms = {}
    for i, p in enumerate(comps):
        for exps, coef in p.terms.items():
            terms[exps[:i1] + (b - i, i)] = coef
    return MultiPoly(FAM_VARS, terms)


def _fam_transvectant(g, gb, h, hb, k):
    comps_g = _fam_x_components(g, gb)
    comps_h = _fam_x_components(h, hb)
    out = [MultiPoly.zero(FAM_VARS) for _ in range(gb + hb - 2 * k + 1)]
    prods = {}
    for i, i2, s, w in transvectant_weights(gb, hb, k):
        key = (i, i2)
        p = prods.get(key)
        if p is None:
            p = prods[key] = comps_g[i] * comps_h[i2]
        out[s] = out[s] + p.scale(w)
    return _fam_assemble(out)


@lru_cache(maxsize=1)
def family_generators():
    """All 26 generators evaluated on the family, via the same recipes.

    Substitution commutes with the x1, x2 derivatives of the transvectant, so
    running the recipes on the substituted sextic agrees with substituting
    into the symbolic generators; tests assert this on small cases.
    """
    fam = family()
    fexp = universal_on_family(fam)
    table = {"C1_6": (fexp, 6)}
    powcache = {}

    def operand(tok):
        if "^" in tok:
            nm, p = tok.split("^")
            p = int(p)
            if (nm, p) not in powcache:
                base, bb = table[nm]
                powcache[(nm, p)] = (base ** p, bb * p)
            return powcache[(nm, p)]
        return table[tok]

    for name, recipe in GENERATOR_RECIPES.items():
        if recipe == "f":
            continue
        (g, gb), (h, hb), k = operand(recipe[0]), operand(recipe[1]), recipe[2]
        val = _fam_transvectant(g, gb, h, hb, k)
        scale = GENERATOR_SCALE.get(name, 1)
        if scale != 1:
            val = val.scale(scale)
        table[name] = (val, gb + hb - 2 * k)
    return table


def universal_on_family(fam):
    """The family sextic homogenized to x1, x2 with the a-coordinates plugged in."""
    V = FAM_VARS
    out = MultiPoly.zero(V)
    for i in range(7):
        mono = MultiPoly.monomial(V, comb(6, i), x1=6 - i, x2=i)
        out = out + fam.a_coords[f"a{i}"] * mono
    return out


def e3_order_expression(expr):
    """e3_order of a generator expression, evaluated on the family table."""
    monomials = parse_expression(expr) if isinstance(expr, str) else expr
    table = family_generators()
    total = MultiPoly.zero(FAM_VARS)
    powcache = {}
    for coef, factors in monomials:
        part = MultiPoly.const(FAM_VARS, 1)
        for name, p in sorted(factors.items()):
            if (name, p) not in powcache:
                powcache[(name, p)] = table[name][0] ** p
            part = part * powcache[(name, p)]
        total = total + part.scale(coef)
    return _t_order(total)


def e3_order_specialized(cov, seed=0, trials=3):
    """e3_order at random rational specializations of (c, h0..h3).

    Used as the genericity guard: the symbolic order must agree with the
    order at generic parameter values (nonzero c, h0, h3 to keep the family
    nondegenerate).
    """
    rng = random.Random(seed)
    fam = family()
    orders = []
    for _ in range(trials):
        vals = {}
        for name in ("c", "h0", "h1", "h2", "h3"):
            v = 0
            while v == 0 and name in ("c", "h0", "h3"):
                v = rng.randint(-9, 9)
            vals[name] = v if name in ("c", "h0", "h3") else rng.randint(-9, 9)
        assignment = {
            v: MultiPoly.const(FAM_VARS, vals[v]) if v in vals
            else MultiPoly.variable(FAM_VARS, v)
            for v in FAM_VARS
        }
        spec_a = {k: p.subs(assignment) for k, p in fam.a_coords.items()}
        spec_a["x1"] = MultiPoly.variable(FAM_VARS, "x1")
        spec_a["x2"] = MultiPoly.variable(FAM_VARS, "x2")
        orders.append(_t_order(cov.poly.subs(spec_a)))
    return orders


__all__ = [
    "FAM_VARS", "INFINITE_ORDER", "CuspidalFamily", "family", "e3_order",
    "a11_order", "family_generators", "e3_order_expression",
    "e3_order_specialized",
]
