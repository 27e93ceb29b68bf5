import pytest

from sexticforms.exact import Rational, comb
from sexticforms.covariant import eval_expression, generators
from sexticforms.fourier import chi30, chi5, chi63
from sexticforms.series import series_equal_report, unpack
from sexticforms.siegel import (
    NamedFormSpec, build_named_form, check_leading, named_form_specs,
    series_generators, substitute_chi63, substitute_expression, vector_from_form,
    verify_case, verify_identity, wedge,
)
from sexticforms.vanishing import a11_order

N4 = 24


def test_substituting_the_universal_sextic_returns_chi63():
    table = generators()
    v = substitute_chi63(table["C1_6"], N4)
    w = chi63(N4)
    assert (v.j, v.k, v.character) == (6, 3, 1)
    for a, b in zip(v.components, w.components):
        assert series_equal_report(a, b)[1] is None


@pytest.mark.parametrize("name", ["C2_0", "C3_2", "C2_4"])
def test_generic_substitution_agrees_with_recipe_table(name):
    table = generators()
    generic = substitute_chi63(table[name], N4)
    sf = series_generators(N4).get(name)
    recipe = vector_from_form(sf, table[name].a)
    assert (generic.j, generic.k) == (recipe.j, recipe.k)
    for a, b in zip(generic.components, recipe.components):
        depth, mism = series_equal_report(a, b)
        assert mism is None


def test_expression_substitution_agrees_with_generic():
    table = generators()
    expr = "4*C2_0*C3_2 - 15*C5_2"
    generic = substitute_chi63(eval_expression(expr, table), N4)
    fast = substitute_expression(expr, N4)
    assert (generic.j, generic.k) == (fast.j, fast.k) == (2, 29)
    for a, b in zip(generic.components, fast.components):
        assert series_equal_report(a, b)[1] is None


def test_weight_and_character_bookkeeping():
    v = substitute_expression("C3_2", N4)
    assert (v.j, v.k, v.character) == (2, 17, 1)
    w = substitute_expression("C2_4", N4)
    assert (w.j, w.k, w.character) == (4, 10, 0)


def test_h1_order_of_substituted_invariant():
    v = substitute_expression("C15_0", 40)
    assert v.h1_order() == 12          # = ord along the diagonal + 15


@pytest.mark.parametrize("expr,a,a11", [
    ("C1_6", 1, -1),
    ("C3_2", 3, -3),
    ("4*C2_0*C3_2 - 15*C5_2", 5, -1),
    ("32*C2_0^2*C3_2 + 135*C2_0*C5_2 - 300*C3_2*C4_0 - 15750*C7_2", 7, -1),
])
def test_vanishing_orders_cross_check(expr, a, a11):
    # two independent computations: t-order on the cuspidal family versus
    # u = 1 multiplicity of the substituted Fourier expansion
    table = generators()
    cov = eval_expression(expr, table)
    assert a11_order(cov) == a11
    v = substitute_expression(expr, 28)
    assert v.h1_order() - cov.a == a11


def test_named_form_weights_and_leading():
    specs = named_form_specs()
    assert sorted(specs) == sorted(
        ["j2_odd", "j2_even", "j4_odd", "j4_even", "j6_odd", "j6_even",
         "j8_odd", "j8_even"])
    sp = specs["j2_odd"][0]
    F = build_named_form(sp, N4)
    assert (F.j, F.k, F.character) == (2, 9, 1)
    assert check_leading(F, "F2_9") is None


def test_bad_spec_weight_is_rejected():
    sp = NamedFormSpec("bogus", "j2_odd", 2, 11, Rational(1), 1, "C3_2")
    with pytest.raises(Exception):
        build_named_form(sp, N4)


def test_wedge_antisymmetry_and_degeneracy():
    specs = named_form_specs()["j2_odd"]
    forms = [build_named_form(sp, N4) for sp in specs]
    w = wedge(forms)
    swapped = wedge([forms[1], forms[0], forms[2]])
    assert series_equal_report(w.series, swapped.series.scale(-1))[1] is None
    degenerate = wedge([forms[0], forms[0], forms[2]])
    assert not degenerate.series.terms
    with pytest.raises(ValueError):
        wedge(forms[:2])


def test_wedge_identity_j2_odd_at_desk_scale():
    specs = named_form_specs()["j2_odd"]
    forms = [build_named_form(sp, N4) for sp in specs]
    w = wedge(forms)
    assert w.weight == 40 and w.character == 1
    rep = verify_identity(w, "j2_odd", N4)
    assert rep["ok"], rep


def test_chi30_multiplicative_construction():
    f = chi30(24)
    assert f.upoly(12, 20) == {2: Rational(1), -2: Rational(1)}
    assert f.upoly(20, 12) == {2: Rational(-1), -2: Rational(-1)}
    assert f.h1_order() == 0
    assert not f.restrict_h4()
    assert f.u_symmetry_sign() == 1
    d = f.swap_xy() + f
    assert not d.terms


def test_verify_case_j10_reports_unavailable():
    rep = verify_case("j10_odd")
    assert rep["ok"] and rep.get("skipped")
    assert "unavailable" in rep["checks"][0][2]
