import itertools

import pytest

from trimix.forms import (
    FormSyntaxError,
    MixedForm,
    ParityViolation,
    classify,
    count_hex,
    count_mixed,
    count_odd_squares,
    count_squares_signed,
    count_triangular,
    counts_upto,
    ellipsoid_lattice_count,
    gen_series,
    modular_series,
    parse_form,
)


def test_parse():
    f = parse_form("mixed:2^1 ; 1^3 ; 3^3")
    assert f == MixedForm(hex=(2,), squares=(1, 1, 1), tri=(3, 3, 3))
    assert parse_form("tri:1^2 3^2").tri == (1, 1, 3, 3)
    assert parse_form("st:1^1 3^1 ; 2^1 6^1").squares == (1, 3)


@pytest.mark.parametrize("bad", ["1^2", "foo:1^2", "tri:1^2 ; 3", "tri:x^2"])
def test_parse_errors(bad):
    with pytest.raises(FormSyntaxError):
        parse_form(bad)


def test_classify():
    c = classify(MixedForm(tri=(1, 1, 3, 3)))
    assert (c.weight, c.level, c.modular) == (2, 6, True)
    assert c.character.agrees_mod(c.character.primitive(), 6)
    assert c.character.primitive().is_trivial
    c = classify(MixedForm(tri=(1, 2, 2, 3)))
    assert c.modular and c.level == 12
    assert c.character.primitive().top == 12
    assert not classify(MixedForm(tri=(1, 1, 1, 1))).modular


def test_parity_violation():
    with pytest.raises(ParityViolation):
        classify(MixedForm(tri=(1, 1, 1)))


def test_count_examples():
    assert count_triangular((1, 1, 1, 1), 1) == 4
    assert count_triangular((2, 5), 0) == 1
    # T_a + 3 T_b = 4 only at (a, b) = (1, 1)
    assert count_triangular((1, 3), 4) == _naive_tri((1, 3), 4) == 1
    assert count_squares_signed((1, 1), 1) == 4
    assert count_squares_signed((1,), 4) == 2
    assert count_squares_signed((1, 2), 3) == 4
    assert count_odd_squares((1, 1), 2) == 1
    assert count_odd_squares((1,), 9) == 1
    assert count_odd_squares((1, 1, 1, 1), 12) == 4
    assert count_hex((1,), 1) == 6
    assert count_mixed(MixedForm(hex=(2,), squares=(1, 1, 1), tri=(3, 3, 3)), 0) == 1


def _naive_tri(c, n):
    tri = [t * (t + 1) // 2 for t in range(n + 2)]
    return sum(1 for z in itertools.product(tri, repeat=len(c)) if sum(a * b for a, b in zip(c, z)) == n)


def test_triangular_against_naive():
    for c in [(1, 1), (1, 2, 3), (2, 2, 3, 5)]:
        for n in range(15):
            assert count_triangular(c, n) == _naive_tri(c, n)


def test_series_matches_counts():
    for desc in ["tri:1^2 3^2", "st:1^1 3^1 ; 2^1 6^1", "lt:1^1 ; 1^1 2^1 3^2", "mixed:2^1 ; 1^3 ; 3^3", "ls:1^1 3^1 ; 1^2"]:
        f = parse_form(desc)
        assert gen_series(f, 24 * 30).qcoeffs(30) == counts_upto(f, 29)


def test_modular_series_shift():
    f = MixedForm(tri=(1, 1, 3, 3))
    s = modular_series(f, 24 * 10)
    assert s.offset24 == 24 and s[1] == 1 and s[2] == count_triangular(f.tri, 1)


def test_psi_c_q2():
    assert gen_series(MixedForm(tri=(1, 1)), 240)[2] == 1


def test_ellipsoid_sign_symmetry():
    for c in [(1,), (1, 1), (1, 3), (1, 2, 3)]:
        for r2 in range(0, 16):
            assert ellipsoid_lattice_count(c, r2 / 2) % 2 ** len(c) == 0


def test_ellipsoid_boundary_point_counts():
    # radius 1/2 in one variable: z = 0 and z = -1 lie on the boundary
    assert ellipsoid_lattice_count((1,), "1/4") == 2
