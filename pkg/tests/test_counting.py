import itertools
import math
from fractions import Fraction

import pytest
import sympy

from liminal.counting import (
    INF,
    INVOLUTION_POINT,
    CountKey,
    bounded_mult_total,
    carlitz_degree_check,
    count,
    divisors,
    irr_count,
    liminal_bounded_total,
    liminal_irr,
    liminal_sf_type,
    liminal_total,
    liminal_type,
    mobius,
    necklace,
    sf_type_poly,
    total_count,
    type_poly,
    verify_congruence,
    verify_liminal_reciprocity,
    verify_zeta_identities,
)
from liminal.errors import OutOfRange
from liminal.exact import PolyQ, RatFuncQ, series_at_zero, substitute_involution
from liminal.partitions import Partition, partitions_of

Q = sympy.Symbol("q")


def aperiodic_words(q: int, d: int) -> int:
    def primitive(w):
        return all(w != w[k:] + w[:k] for k in range(1, d))
    return sum(primitive(w) for w in itertools.product(range(q), repeat=d))


def brute_mobius(n: int) -> int:
    # sum over squarefree divisors of (-1)^(#primes), via the defining identity sum_{e|n} mu(e) = [n == 1]
    vals = {1: 1}
    for k in range(2, n + 1):
        vals[k] = -sum(vals[e] for e in range(1, k) if k % e == 0)
    return vals[n]


@pytest.mark.parametrize("n", range(1, 40))
def test_mobius_and_divisors(n):
    assert mobius(n) == brute_mobius(n)
    assert divisors(n) == [e for e in range(1, n + 1) if n % e == 0]


@pytest.mark.parametrize("q,d", [(2, d) for d in range(1, 9)] + [(3, d) for d in range(1, 6)] + [(4, 4)])
def test_necklace_counts_lyndon_words(q, d):
    assert necklace(d)(q) * d == aperiodic_words(q, d)


def test_total_count_small_cases():
    q = PolyQ.q()
    assert total_count(3, 1) == q**3
    # degree <= d monomials in n variables: binom(d+n, n)
    for d in range(1, 5):
        for n in range(1, 4):
            top, below = math.comb(d + n, n), math.comb(d + n - 1, n)
            assert total_count(d, n)(2) == (2**top - 2**below)
    assert total_count(3, 2)(2) == 960
    with pytest.raises(OutOfRange):
        total_count(1000, 1000)


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_types_partition_the_counts(d, n):
    lams = partitions_of(d)
    assert sum((type_poly(lam, n) for lam in lams), PolyQ()) == total_count(d, n)
    assert sum((sf_type_poly(lam, n) for lam in lams), PolyQ()) == bounded_mult_total(d, n, 1)
    assert type_poly(Partition.of(d), n) == irr_count(d, n)


@pytest.mark.parametrize("d", range(2, 9))
def test_univariate_squarefree_count(d):
    q = PolyQ.q()
    assert bounded_mult_total(d, 1, 1) == q**d - q ** (d - 1)


def test_named_values():
    assert irr_count(2, 2)(2) == 35
    assert bounded_mult_total(3, 2, 1)(2) == 924
    q = PolyQ.q()
    assert liminal_irr(3) == RatFuncQ(PolyQ((0, Fraction(1, 3), Fraction(-2, 3))), (q - 1) ** 3)
    assert liminal_total(0) == 1
    assert liminal_total(1) == -INVOLUTION_POINT
    assert all(liminal_total(d) == 0 for d in range(2, 8))


M3N_PRINTED = {
    1: {1: "-1/3", 3: "1/3"},
    2: {1: "-1/3", 2: "-1/3", 3: "1/3", 4: "0", 5: "-1", 6: "-2/3"},
    3: {1: "-1/3", 2: "-1/3", 3: "0", 4: "1", 5: "1", 6: "1/3", 7: "-1"},
    4: {1: "-1/3", 2: "-1/3", 3: "0", 4: "2/3", 5: "2", 6: "7/3", 7: "2"},
    5: {1: "-1/3", 2: "-1/3", 3: "0", 4: "2/3", 5: "5/3", 6: "10/3", 7: "4"},
    6: {1: "-1/3", 2: "-1/3", 3: "0", 4: "2/3", 5: "5/3", 6: "3", 7: "5"},
    7: {1: "-1/3", 2: "-1/3", 3: "0", 4: "2/3", 5: "5/3", 6: "3", 7: "14/3"},
}


@pytest.mark.parametrize("n", range(1, 8))
def test_m3n_table(n):
    p = irr_count(3, n)
    assert p.coefficient(0) == 0
    for k, c in M3N_PRINTED[n].items():
        assert p.coefficient(k) == Fraction(c)
    if n == 1:
        assert p.degree == 3


@pytest.mark.parametrize("d", range(1, 9))
def test_liminal_irr_series_against_sympy(d):
    x = Q / (Q - 1)
    expr = -sympy.Rational(1, d) * sum(mobius(d // e) * x**e for e in divisors(d))
    ref = sympy.series(expr, Q, 0, 11).removeO()
    s = series_at_zero(liminal_irr(d), 10)
    assert [s.coefficient(k) for k in range(11)] == [Fraction(str(ref.coeff(Q, k))) for k in range(11)]


@pytest.mark.parametrize("d", range(1, 6))
def test_liminal_limits_are_limits(d):
    # the finite counts at n agree with the limit through q^n
    n = 6
    for lam in partitions_of(d):
        for finite, limit in ((type_poly(lam, n), liminal_type(lam)), (sf_type_poly(lam, n), liminal_sf_type(lam))):
            s = series_at_zero(limit, n)
            assert [finite.coefficient(k) for k in range(n + 1)] == list(s.coeffs)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("d", range(1, 7))
def test_bounded_closed_form_is_limit(d, m):
    n = 7
    s = series_at_zero(liminal_bounded_total(d, m), n)
    f = bounded_mult_total(d, n, m)
    assert [f.coefficient(k) for k in range(n + 1)] == list(s.coeffs)


def test_reciprocity_by_hand_at_d2():
    x = INVOLUTION_POINT
    # one variable: T_{(2),1} = (q^2-q)/2, T_{(1,1),1} = (q^2+q)/2, Tsf_{(1,1),1} = (q^2-q)/2
    assert liminal_sf_type(Partition.of(2)) == -(x * x - x) / 2
    assert liminal_sf_type(Partition.of(1, 1)) == (x * x + x) / 2
    assert liminal_type(Partition.of(1, 1)) == (x * x - x) / 2
    assert substitute_involution(substitute_involution(liminal_irr(4))) == liminal_irr(4)


def test_count_dispatch():
    lam = Partition.of(2, 1)
    assert count(CountKey(3, 2)) == total_count(3, 2)
    assert count(CountKey(3, INF)) == liminal_total(3)
    assert count(CountKey(3, 2, lam)) == type_poly(lam, 2)
    assert count(CountKey(3, 2, lam, m=1)) == sf_type_poly(lam, 2)
    assert count(CountKey(3, INF, lam, m=1)) == liminal_sf_type(lam)
    assert count(CountKey(3, 2, None, m=2)) == bounded_mult_total(3, 2, 2)
    with pytest.raises(NotImplementedError):
        count(CountKey(3, 2, lam, m=2))


def test_out_of_range():
    with pytest.raises(OutOfRange):
        necklace(0)
    with pytest.raises(OutOfRange):
        irr_count(3, 0)
    with pytest.raises(OutOfRange):
        verify_liminal_reciprocity(13)


def test_verification_suites_pass():
    for report in (
        verify_liminal_reciprocity(5),
        verify_congruence(4, 4),
        verify_zeta_identities(2, 8),
        verify_zeta_identities(INF, 8, ms=(1, 2, 3)),
        carlitz_degree_check(4, 3),
    ):
        assert report.ok, report.failures
        assert len(report) > 0


def test_report_detects_failure():
    from liminal.report import Report

    r = Report()
    r.check("x", {}, 1, 1)
    r.check("y", {"d": 2}, Fraction(1, 2), Fraction(1, 3))
    assert not r.ok
    assert [e.identity for e in r.failures] == ["y"]
    assert r.to_json()[1]["pass"] is False


def test_liminal_irr_two_in_closed_form():
    q = PolyQ.q()
    assert liminal_irr(2) == RatFuncQ(-q, 2 * (q - 1) ** 2)
    s = series_at_zero(liminal_irr(2), 3)
    assert s.coeffs == (0, Fraction(-1, 2), -1, Fraction(-3, 2))
    assert list(s.coeffs[:3]) == [irr_count(2, 2).coefficient(k) for k in range(3)]
