from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from liminal.errors import DegenerateSubstitution, PoleAtZero
from liminal.exact import (
    AT_INFINITY,
    PolyQ,
    RatFuncQ,
    SeriesQ,
    _convolve,
    _convolve_naive,
    poly_binomial,
    poly_gcd,
    poly_multichoose,
    series_at_infinity,
    series_at_zero,
    substitute_involution,
)

Q = sympy.Symbol("q")
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(fracs, max_size=6).map(PolyQ)
nonzero_polys = polys.filter(bool)


def to_sympy(p: PolyQ):
    return sum(sympy.Rational(c.numerator, c.denominator) * Q**i for i, c in enumerate(p.coeffs))


def rat_to_sympy(r: RatFuncQ):
    return to_sympy(r.num) / to_sympy(r.den)


def same(expr_a, expr_b) -> bool:
    return sympy.simplify(expr_a - expr_b) == 0


@settings(max_examples=40)
@given(polys, polys)
def test_ring_operations_match_sympy(a, b):
    assert same(to_sympy(a + b), to_sympy(a) + to_sympy(b))
    assert same(to_sympy(a - b), to_sympy(a) - to_sympy(b))
    assert same(to_sympy(a * b), to_sympy(a) * to_sympy(b))


@given(st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=40),
       st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=40))
def test_kronecker_convolution_equals_schoolbook(a, b):
    assert _convolve(a, b) == _convolve_naive(a, b)


@given(polys, nonzero_polys)
def test_division_with_remainder(a, b):
    quo, rem = divmod(a, b)
    assert quo * b + rem == a
    assert rem.degree < b.degree


@settings(max_examples=60)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_against_sympy(a, b, c):
    g = poly_gcd(a * c, b * c)
    expected = sympy.Poly(sympy.gcd(to_sympy(a * c), to_sympy(b * c)), Q).monic()
    assert g.lc == 1
    assert same(to_sympy(g), expected.as_expr())


def test_ratfunc_canonical_form():
    q = PolyQ.q()
    r = RatFuncQ(q * q - 1, 2 * q - 2)
    assert r.den == PolyQ.one()
    assert r.num == PolyQ((Fraction(1, 2), Fraction(1, 2)))
    s = RatFuncQ(PolyQ((0, 3)), PolyQ((-3, 3)))
    assert s.den.lc == 1
    assert s == RatFuncQ(q, q - 1)
    with pytest.raises(ZeroDivisionError):
        RatFuncQ(q, PolyQ.zero())


@settings(max_examples=25)
@given(polys, nonzero_polys, polys, nonzero_polys)
def test_ratfunc_field_operations(a, b, c, d):
    x, y = RatFuncQ(a, b), RatFuncQ(c, d)
    assert same(rat_to_sympy(x + y), rat_to_sympy(x) + rat_to_sympy(y))
    assert same(rat_to_sympy(x * y), rat_to_sympy(x) * rat_to_sympy(y))
    if y:
        assert (x / y) * y == x


def test_binomial_and_multichoose_reciprocity():
    # binom(-x, m) = (-1)^m multichoose(x, m)
    x = PolyQ.q()
    for m in range(6):
        assert poly_binomial(-x, m) == (-1) ** m * poly_multichoose(x, m)
    assert poly_binomial(7, 3) == 35
    assert poly_multichoose(3, 2) == 6


@settings(max_examples=40)
@given(polys, nonzero_polys)
def test_involution_is_an_involution(a, b):
    r = RatFuncQ(a, b)
    try:
        once = substitute_involution(r)
    except DegenerateSubstitution:
        return
    assert substitute_involution(once) == r
    assert same(rat_to_sympy(once), rat_to_sympy(r).subs(Q, Q / (Q - 1)))


def test_series_at_zero_matches_sympy():
    q = PolyQ.q()
    r = RatFuncQ(q - 2 * q * q, (q - 1) ** 3)
    s = series_at_zero(r, 12)
    ref = sympy.series(rat_to_sympy(r), Q, 0, 13).removeO()
    for k in range(13):
        assert s.coefficient(k) == Fraction(str(ref.coeff(Q, k)))
    with pytest.raises(PoleAtZero):
        series_at_zero(RatFuncQ(PolyQ.one(), q), 4)


def test_series_at_infinity_matches_sympy():
    q = PolyQ.q()
    r = RatFuncQ(q**3 + 1, q - 1)
    s = series_at_infinity(r, 8)
    assert s.at == AT_INFINITY
    ref = sympy.series(rat_to_sympy(r).subs(Q, 1 / Q), Q, 0, 9).removeO()
    for k in range(-2, 7):
        assert s.coefficient(-k) == Fraction(str(ref.coeff(Q, k)))


def test_series_arithmetic_is_truncated():
    q = PolyQ.q()
    a = series_at_zero(RatFuncQ(PolyQ.one(), 1 - q), 5)
    b = series_at_zero(RatFuncQ(PolyQ.one(), 1 + q), 3)
    prod = a * b
    assert prod.order == 3
    assert prod == series_at_zero(RatFuncQ(PolyQ.one(), 1 - q * q), 3)


def test_json_round_trips():
    q = PolyQ.q()
    p = PolyQ((Fraction(-1, 3), 0, 7))
    r = RatFuncQ(q - 2, (q - 1) ** 2)
    s = series_at_infinity(r, 4)
    assert PolyQ.from_json(p.to_json()) == p
    assert RatFuncQ.from_json(r.to_json()) == r
    assert SeriesQ.from_json(s.to_json()) == s


def test_printing():
    q = PolyQ.q()
    assert str(PolyQ((0, Fraction(-1, 3), 0, Fraction(1, 3)))) == "(-1/3)q + (1/3)q^3"
    assert str(RatFuncQ(-q, q - 1)) == "-q/(q-1)"
    assert str(PolyQ.zero()) == "0"


def test_geometric_series_both_ends():
    q = PolyQ.q()
    x = RatFuncQ(q, q - 1)
    assert series_at_zero(x, 4).coeffs == (0, -1, -1, -1, -1)
    s = series_at_infinity(x, 2)
    assert (s.lead, s.coeffs) == (0, (1, 1, 1))
    assert series_at_infinity(x, 3).coeffs == (1, 1, 1, 1)
