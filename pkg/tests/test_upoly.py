from fractions import Fraction as F

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from quadfactor.upoly import PolynomialSyntaxError, UPoly, parse_poly, poly_gcd, rational_roots

X = sympy.Symbol("x")

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small_q, min_size=0, max_size=8).map(UPoly)
nonzero_polys = polys.filter(lambda f: not f.is_zero())


def to_sympy(f: UPoly):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in f.coeffs])) or [0],
                      X, domain="QQ")


def from_sympy(g) -> UPoly:
    return UPoly(F(int(c.p), int(c.q)) for c in reversed(g.all_coeffs()))


def test_trailing_zeros_trimmed_and_degree():
    assert UPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert UPoly().degree == -1
    assert UPoly([0, 0]).is_zero()
    assert UPoly([3, 0, 1]).lead == 1


def test_rendering():
    assert str(UPoly([1, 3, 2, 1])) == "x^3 + 2x^2 + 3x + 1"
    assert str(UPoly([0, 0, F(37, 18)])) == "37/18 x^2"
    assert str(UPoly([-1, 0, -1])) == "-x^2 - 1"
    assert str(UPoly()) == "0"


@pytest.mark.parametrize("text,coeffs", [
    ("x^5 - 3x^2 + x + 1", [1, 1, -3, 0, 0, 1]),
    ("  x**4+x*x  ", [0, 0, 1, 0, 1]),
    ("3 x^2 x", [0, 0, 0, 3]),
    ("-x^2 + 1/2", [F(1, 2), 0, -1]),
    ("2*x^3 - 4/6 x", [0, F(-2, 3), 0, 2]),
    ("x^2 + x^2", [0, 0, 2]),
    ("0", []),
])
def test_parse(text, coeffs):
    assert parse_poly(text) == UPoly(coeffs)


@pytest.mark.parametrize("text,position", [
    ("x^5 + 3y", 7),
    ("x^1.5", 3),
    ("x^-2", 2),
    ("1/0 x", 2),
    ("x^2 +", 5),
    ("0.5x", 1),
])
def test_parse_errors_report_position(text, position):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_poly(text)
    assert info.value.position == position
    assert "position" in str(info.value)


@given(polys)
def test_render_parse_roundtrip(f):
    assert parse_poly(str(f)) == f


@given(polys, polys)
def test_ring_ops_match_sympy(f, g):
    assert to_sympy(f + g) == to_sympy(f) + to_sympy(g)
    assert to_sympy(f - g) == to_sympy(f) - to_sympy(g)
    assert to_sympy(f * g) == to_sympy(f) * to_sympy(g)


@given(polys, nonzero_polys)
def test_divmod_matches_sympy(f, g):
    q, r = divmod(f, g)
    sq, sr = sympy.div(to_sympy(f), to_sympy(g))
    assert q == from_sympy(sq) and r == from_sympy(sr)
    assert q * g + r == f and r.degree < g.degree


def test_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(UPoly([1]), UPoly())


def test_exact_div_requires_zero_remainder():
    f = UPoly([1, 0, 1])
    assert (f * UPoly([2, 1])).exact_div(f) == UPoly([2, 1])
    with pytest.raises(ValueError):
        UPoly([1, 1, 1]).exact_div(UPoly([1, 1]))


@given(polys, st.lists(small_q, min_size=1, max_size=5))
def test_horner_matches_sympy(f, xs):
    for x in xs:
        assert f(x) == to_sympy(f).eval(sympy.Rational(x.numerator, x.denominator))


@given(nonzero_polys, nonzero_polys)
def test_gcd_matches_sympy(f, g):
    assert poly_gcd(f, g) == from_sympy(sympy.gcd(to_sympy(f), to_sympy(g)).monic())


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=6), min_size=1, max_size=5),
       st.lists(st.integers(-9, 9), min_size=3, max_size=4))
def test_rational_roots_matches_sympy(planted, noise):
    f = UPoly([1])
    for r in planted:
        f = f * UPoly([-r, 1])
    f = f * UPoly(noise)
    assume(not f.is_zero())
    rs = rational_roots(f)
    expected = {F(int(r.p), int(r.q)) for r in sympy.roots(to_sympy(f), filter="Q")}
    assert rs.complete
    assert set(rs.roots) == expected
    assert set(planted) <= set(rs.roots)


def test_rational_roots_of_zero_polynomial():
    with pytest.raises(ValueError):
        rational_roots(UPoly())


def test_reverse_and_integer_form():
    f = UPoly([F(1, 2), 0, F(-3, 4), 1])
    assert f.reverse(3) == UPoly([1, F(-3, 4), 0, F(1, 2)])
    scale, ints = f.integer_form()
    assert list(ints) == [2, 0, -3, 4]
    assert UPoly(ints) * scale == f
