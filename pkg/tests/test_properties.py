from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from trimix.basis import SPACES, basis_for
from trimix.forms import (
    MixedForm,
    count_hex,
    count_mixed,
    count_odd_squares,
    count_squares_signed,
    count_triangular,
    gen_series,
)
from trimix.qseries import Series24, dilate, equal_through, psi_series
from trimix.solve import combine, express_in_basis

P = 24 * 8
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def same(x, y):
    """Equal on every exponent both operands know."""
    return equal_through(x, y, min(x.prec24, y.prec24))


@st.composite
def series(draw):
    offset = draw(st.integers(-30, 30))
    cs = draw(st.lists(fracs, min_size=0, max_size=12))
    return Series24(offset, cs, P)


@settings(max_examples=150, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert same(a + b, b + a)
    assert same(a * b, b * a)
    assert same((a + b) + c, a + (b + c))
    assert same((a * b) * c, a * (b * c))
    assert same(a * (b + c), a * b + a * c)
    assert same(a + Series24.zero(P), a)
    assert same(a * Series24.one(P), a)
    assert (a - a).is_zero()


coeffs = st.lists(st.integers(1, 4), min_size=1, max_size=3)


def _odd_square_series(c, prec24):
    s = Series24.one(prec24)
    for ci in c:
        s = s * (dilate(psi_series(prec24), 8 * ci) * Series24.monomial(24 * ci, 1, prec24))
    return s


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_oracles_match_series(a, b, c):
    n = 31
    P30 = 24 * n
    tri = gen_series(MixedForm(tri=c), P30).qcoeffs(n)
    sq = gen_series(MixedForm(squares=b), P30).qcoeffs(n)
    hx = gen_series(MixedForm(hex=a), P30).qcoeffs(n)
    odd = _odd_square_series(c, P30).qcoeffs(n)
    mixed_form = MixedForm(hex=a, squares=b, tri=c)
    mixed = gen_series(mixed_form, P30).qcoeffs(n)
    for m in range(n):
        assert tri[m] == count_triangular(c, m)
        assert sq[m] == count_squares_signed(b, m)
        assert hx[m] == count_hex(a, m)
        assert odd[m] == count_odd_squares(c, m)
        assert mixed[m] == count_mixed(mixed_form, m)


spaces = st.sampled_from(sorted(SPACES, key=str))


@settings(max_examples=60, deadline=None)
@given(spaces, st.data())
def test_round_trip(space, data):
    b = basis_for(space)
    t = data.draw(st.lists(fracs, min_size=len(b), max_size=len(b)))
    n = max(len(b), 30) + 1
    s = combine(b, t, 24 * n)
    assert list(express_in_basis(s, space).values) == [F(x) for x in t]
