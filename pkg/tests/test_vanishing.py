import math
import random

import pytest

from sexticforms.exact import MultiPoly
from sexticforms.covariant import COV_VARS, Covariant, eval_expression, generators
from sexticforms.vanishing import (
    FAM_VARS, INFINITE_ORDER, a11_order, e3_order, e3_order_expression,
    e3_order_specialized, family, family_generators,
)


def test_family_degenerates_to_triple_root():
    fam = family()
    g = fam.sextic_dehom
    at_t0 = {exps: c for exps, c in g.terms.items() if exps[FAM_VARS.index("t")] == 0}
    # t = 0 slice equals x^3 * h(x): every term divisible by x^3
    ix = FAM_VARS.index("x1")
    assert at_t0
    assert all(exps[ix] >= 3 for exps in at_t0)


def test_a_coordinates_match_binomial_convention():
    fam = family()
    # a0 = h3 (leading coefficient), a6 = c^2 t^3 h0
    assert fam.a_coords["a0"] == MultiPoly.monomial(FAM_VARS, 1, h3=1)
    assert fam.a_coords["a6"] == MultiPoly.monomial(FAM_VARS, 1, c=2, t=3, h0=1)


def test_e3_orders_of_basic_covariants():
    table = generators()
    assert e3_order(table["C1_6"]) == 0
    assert e3_order(table["C2_0"]) == 0
    assert e3_order(table["C3_2"]) == 0
    assert e3_order(table["C15_0"]) == 6


def test_a11_orders_from_theorem():
    table = generators()
    assert a11_order(table["C1_6"]) == -1      # simple pole of the sextic's form
    assert a11_order(table["C2_0"]) == -2
    assert a11_order(table["C15_0"]) == -3
    assert a11_order(table["C3_2"]) == -3


def test_xi_orders_for_weight_nine_eleven_seventeen():
    table = generators()
    xi1 = eval_expression("4*C2_0*C3_2 - 15*C5_2", table)
    xi2 = eval_expression(
        "32*C2_0^2*C3_2 + 135*C2_0*C5_2 - 300*C3_2*C4_0 - 15750*C7_2", table)
    assert (e3_order(xi1), a11_order(xi1)) == (2, -1)
    assert (e3_order(xi2), a11_order(xi2)) == (3, -1)


def test_zero_covariant_gets_infinite_order():
    zero = Covariant(MultiPoly.zero(COV_VARS), 0)
    assert e3_order(zero) == INFINITE_ORDER
    assert a11_order(zero) == INFINITE_ORDER
    assert math.isinf(a11_order(zero))


def test_multiplicativity_on_products():
    table = generators()
    rng = random.Random(6)
    names = ["C1_6", "C2_0", "C2_4", "C3_2", "C4_0", "C5_2"]
    for _ in range(6):
        g = table[rng.choice(names)]
        h = table[rng.choice(names)]
        assert e3_order(g * h) == e3_order(g) + e3_order(h)


def test_degree_consistency_under_squaring():
    table = generators()
    c = table["C3_2"]
    assert a11_order(c * c) == 2 * a11_order(c)


def test_recipe_table_agrees_with_generic_substitution():
    fam = family()
    table = generators()
    recipes = family_generators()
    for name in ("C2_0", "C3_6", "C4_4", "C15_0"):
        assert fam.substitute(table[name]) == recipes[name][0]


def test_expression_path_agrees():
    table = generators()
    expr = "4*C2_0*C3_2 - 15*C5_2"
    assert e3_order_expression(expr) == e3_order(eval_expression(expr, table))


def test_genericity_guard_specializations():
    table = generators()
    for name in ("C2_0", "C15_0"):
        symbolic = e3_order(table[name])
        assert all(o == symbolic
                   for o in e3_order_specialized(table[name], seed=1, trials=3))
