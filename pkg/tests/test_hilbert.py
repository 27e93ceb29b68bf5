import pytest

from sexticforms.hilbert import (
    HPRational, check_positivity, format_numerator, free_module_numerator,
    hp_series, numerator_table,
)
from sexticforms.siegel import named_form_specs

GENERATOR_WEIGHTS = {
    (0, "odd"): [5],
    (0, "even"): [30],
    (2, "odd"): [9, 11, 17],
    (2, "even"): [16, 22, 24],
    (4, "odd"): [9, 11, 13, 15, 17],
    (4, "even"): [14, 16, 18, 20, 22],
    (6, "odd"): [3, 5, 11, 13, 17, 19, 21],
    (6, "even"): [8, 10, 12, 16, 18, 24, 26],
    (8, "odd"): [5, 7, 9, 9, 11, 13, 15, 17, 23],
    (8, "even"): [4, 10, 12, 14, 16, 18, 18, 20, 22],
}


def test_free_module_numerators_match_table():
    table = numerator_table()
    for key, weights in GENERATOR_WEIGHTS.items():
        assert free_module_numerator(weights) == table[key], key


def test_weights_agree_with_named_form_specs():
    specs = named_form_specs()
    for (j, parity), weights in GENERATOR_WEIGHTS.items():
        if j == 0:
            continue
        case = f"j{j}_{parity}"
        assert sorted(sp.k for sp in specs[case]) == sorted(weights)


def test_small_expansions():
    odd0 = hp_series(0, "odd")
    coeffs = odd0.expand(42)
    assert coeffs[5] == 1          # the weight-5 form generates
    assert coeffs[0] == 0
    even0 = hp_series(0, "even")
    assert even0.expand(40)[40] == 2   # dim of the weight-40 space


def test_empty_weight_list():
    assert free_module_numerator([]) == {}
    assert HPRational({}).expand(10) == [0] * 11


def test_all_constant_terms_vanish():
    for (j, parity), num in numerator_table().items():
        assert 0 not in num


def test_positivity_shape_and_j12_failure():
    assert check_positivity()
    table = numerator_table()
    for parity in ("odd", "even"):
        assert any(c < 0 for c in table[(12, parity)].values())
        for j in (0, 2, 4, 6, 8, 10):
            assert all(c > 0 for c in table[(j, parity)].values())
            assert sum(table[(j, parity)].values()) == j + 1


def test_formatting():
    assert format_numerator({9: 1, 11: 1, 17: 1}) == "t^9+t^11+t^17"
    assert format_numerator({23: -1, 3: 1}) == "t^3-t^23"
