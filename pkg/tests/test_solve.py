from fractions import Fraction as F

import pytest

from trimix.basis import SpaceId, basis_for
from trimix.etaq import CATALOG
from trimix.forms import modular_series, parse_form
from trimix.qseries import Series24
from trimix.solve import (
    CoefficientVector,
    InconsistentSystem,
    UnderdeterminedSystem,
    combine,
    express_in_basis,
    formula_as_divisor_sums,
    reproduce_table,
    solve_linear,
)

M412 = SpaceId(4, 12)


def fr(*xs):
    return tuple(F(x) for x in xs)


def _solve(desc, space, variant="standard"):
    target = modular_series(parse_form(desc), 24 * 40)
    return express_in_basis(target, space, variant)


def test_table1_row1():
    v = _solve("ls:2^1 ; 1^3 3^3", M412)
    assert v.values == fr(F(1, 120), 0, F(-3, 40), F(-2, 15), 0, F(6, 5), 0, 0, 4)
    assert v.verified_through >= 8


def test_table1_row9():
    v = _solve("lt:1^1 2^1 ; 1^2 3^2", M412)
    assert v.values == fr(F(1, 240), F(-1, 240), F(-3, 80), 0, F(3, 80), 0, 0, 0, 0)


def test_unit_vector():
    b = basis_for(M412)
    v = express_in_basis(b[0].expansion(24 * 20), M412)
    assert v.values == fr(1, *[0] * 8)


@pytest.mark.parametrize("name,expected", [("G", (F(-1, 6), F(-1, 3), F(1, 6))), ("H", (F(1, 2), 1, F(1, 2)))])
def test_g_h_cusp_coordinates(name, expected):
    v = express_in_basis(CATALOG[name].form.expand(24 * 20), M412)
    assert v.values == fr(0, 0, 0, 0, 0, 0, *expected)


def test_table3_row1_e2_variant():
    v = _solve("st:1^1 3^1 ; 2^1 6^1", SpaceId(2, 12), "e2")
    assert v.values == fr(F(-1, 24), F(1, 24), F(1, 8), 0, F(-1, 8), 0)


def test_inconsistent_reports_exponent():
    # a weight-2 series is not in the weight-4 span
    target = modular_series(parse_form("tri:1^2 3^2"), 24 * 40)
    with pytest.raises(InconsistentSystem) as exc:
        express_in_basis(target, M412)
    assert exc.value.exponent >= 0


def test_solve_linear():
    assert solve_linear([[F(1), F(1)], [F(1), F(-1)]], [F(3), F(1)]) == [2, 1]
    with pytest.raises(UnderdeterminedSystem):
        solve_linear([[F(1), F(1)], [F(2), F(2)]], [F(1), F(2)])
    with pytest.raises(InconsistentSystem):
        solve_linear([[F(1)], [F(1)]], [F(1), F(2)])


def test_round_trip_combine():
    b = basis_for(M412)
    t = [F(i - 4, i + 1) for i in range(9)]
    s = combine(b, t, 24 * 20)
    assert list(express_in_basis(s, M412).values) == t


def test_render_table1_row1():
    v = _solve("ls:2^1 ; 1^3 3^3", M412)
    text = formula_as_divisor_sums(v).text
    assert text.startswith("2 sigma_3(n) - 18 sigma_3(n/3) - 32 sigma_3(n/4) + 288 sigma_3(n/12)")
    assert text.endswith("+ 4 a_{4,12}(n)")


def test_render_zero():
    v = CoefficientVector(M412, fr(*[0] * 9), tuple(b.label for b in basis_for(M412)))
    assert formula_as_divisor_sums(v).text == "0"


def test_render_phi():
    sp = SpaceId(2, 8)
    labels = tuple(b.label for b in basis_for(sp))
    v = CoefficientVector(sp, fr(1, 0, 0), labels)
    assert formula_as_divisor_sums(v).text == "24 sigma(n) - 48 sigma(n/2)"


def test_reproduce_table_deterministic():
    a = reproduce_table("T3")
    b = reproduce_table("T3")
    assert [r.got for r in a.rows] == [r.got for r in b.rows]
    assert a.rows[0].got == a.rows[0].expected


def test_table1_row13_has_zero_cusp_part():
    rep = reproduce_table("T1")
    row = next(r for r in rep.rows if r.row == 13)
    assert row.match and all(F(x) == 0 for x in row.got[6:])
