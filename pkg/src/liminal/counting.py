"""Counting polynomials over F_q and their limits as the number of variables grows.

Finite-n counts are :class:`PolyQ` in q; limits (n = INF) are
:class:`RatFuncQ`.  Naming follows the objects counted:

* ``total_count(d, n)``           monic total-degree-d polynomials in n variables
* ``irr_count(d, n)``             the irreducible ones
* ``type_poly(lam, n)``           those of factorization type lam
* ``sf_type_poly(lam, n)``        the squarefree ones of type lam
* ``bounded_mult_total(d, n, m)`` those whose factors have multiplicity <= m
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import InternalInconsistency, OutOfRange
from .exact import (
    PolyQ,
    RatFuncQ,
    poly_binomial,
    poly_multichoose,
    series_at_zero,
    substitute_involution,
)
from .partitions import Partition, partitions_of
from .report import Report

INF = math.inf
EXPONENT_LIMIT = 10 ** 6

Count = Union[PolyQ, RatFuncQ]

_Q = PolyQ.q()
_Q_MINUS_ONE = PolyQ((-1, 1))
# 1/(1 - 1/q) = q/(q-1), the point at which n = 1 and n = INF counts meet
INVOLUTION_POINT = RatFuncQ(_Q, _Q_MINUS_ONE)


def is_inf(n) -> bool:
    return n == INF


def _check_n(n) -> None:
    if not is_inf(n) and (int(n) != n or n < 1):
        raise OutOfRange(f"number of variables must be a positive integer or INF, got {n!r}")


# -- arithmetic functions ----------------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


# -- finite n ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def necklace(d: int) -> PolyQ:
    """M_{d,1}(q) = (1/d) sum_{e | d} mu(d/e) q^e."""
    if d < 1:
        raise OutOfRange("necklace needs d >= 1")
    acc = PolyQ()
    for e in divisors(d):
        mu = mobius(d // e)
        if mu:
            acc = acc + PolyQ.monomial(e, mu)
    return acc / d


def _exponents(d: int, n: int) -> tuple[int, int]:
    hi = math.comb(d + n, n)
    if hi >= EXPONENT_LIMIT:
        raise OutOfRange(f"q-exponent binom({d + n},{n}) = {hi} exceeds {EXPONENT_LIMIT}")
    return hi, math.comb(d + n - 1, n)


@lru_cache(maxsize=None)
def total_count(d: int, n: int) -> PolyQ:
    """(q^binom(d+n,n) - q^binom(d+n-1,n)) / (q - 1)."""
    if d < 1 or n < 1:
        raise OutOfRange("total_count needs d, n >= 1")
    hi, lo = _exponents(d, n)
    return (PolyQ.monomial(hi) - PolyQ.monomial(lo)).exact_div(_Q_MINUS_ONE)


def _type_product(lam: Partition, irr, choose) -> Count:
    acc = None
    for j, m in lam.multiplicities.items():
        f = choose(irr(j), m)
        acc = f if acc is None else acc * f
    return acc


@lru_cache(maxsize=None)
def irr_count(d: int, n: int) -> PolyQ:
    """Monic irreducible polynomials of total degree d in n variables.

    Computed by subtracting every reducible factorization type from the
    total count; memoised on (d, n) since each degree reuses all lower ones.
    """
    if d < 1 or n < 1:
        raise OutOfRange("irr_count needs d, n >= 1")
    if d == 1:
        return total_count(1, n)
    acc = total_count(d, n)
    irr = lambda j: irr_count(j, n)
    for lam in partitions_of(d)[1:]:
        acc = acc - _type_product(lam, irr, poly_multichoose)
    return acc


def type_poly(lam: Partition, n: int) -> PolyQ:
    return _type_product(lam, lambda j: irr_count(j, n), poly_multichoose)


def sf_type_poly(lam: Partition, n: int) -> PolyQ:
    return _type_product(lam, lambda j: irr_count(j, n), poly_binomial)


# -- generating series in t ------------------------------------------------------

@dataclass(frozen=True)
class GenSeriesT:
    """Truncated power series in t whose coefficients are PolyQ or RatFuncQ in q."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order: int, ring=PolyQ) -> "GenSeriesT":
        return cls((ring.one(),) + (ring.zero(),) * order)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __mul__(self, other: "GenSeriesT") -> "GenSeriesT":
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = a[0] * 0
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return GenSeriesT(tuple(out))

    def substitute_power(self, k: int) -> "GenSeriesT":
        """Replace t by t**k, keeping the truncation order."""
        zero = self.coeffs[0] * 0
        out = [zero] * (self.order + 1)
        for i, c in enumerate(self.coeffs):
            if i * k > self.order:
                break
            out[i * k] = c
        return GenSeriesT(tuple(out))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GenSeriesT):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[k] == other.coeffs[k] for k in range(n + 1))

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


def _ring_of(x):
    return RatFuncQ if isinstance(x, RatFuncQ) else PolyQ


def geometric_power(exponent: Count, j: int, order: int) -> GenSeriesT:
    """(1 - t^j)^(-exponent) = sum_b multichoose(exponent, b) t^(j b)."""
    ring = _ring_of(exponent)
    out = [ring.zero()] * (order + 1)
    c = ring.one()
    out[0] = c
    b = 1
    while j * b <= order:
        c = c * (exponent + (b - 1)) / b
        out[j * b] = c
        b += 1
    return GenSeriesT(tuple(out))


def binomial_power(exponent: Count, j: int, order: int) -> GenSeriesT:
    """(1 - t^j)^exponent = sum_a (-1)^a binom(exponent, a) t^(j a)."""
    ring = _ring_of(exponent)
    out = [ring.zero()] * (order + 1)
    c = ring.one()
    out[0] = c
    a = 1
    while j * a <= order:
        c = c * (exponent - (a - 1)) / a
        out[j * a] = -c if a % 2 else c
        a += 1
    return GenSeriesT(tuple(out))


def bounded_power(exponent: Count, j: int, m: int, order: int) -> GenSeriesT:
    """(1 + t^j + ... + t^(m j))^exponent, as (1 - t^((m+1) j))^e (1 - t^j)^(-e)."""
    return binomial_power(exponent, (m + 1) * j, order) * geometric_power(exponent, j, order)


def _irr(j: int, n) -> Count:
    return liminal_irr(j) if is_inf(n) else irr_count(j, n)


def zeta_series(n, order: int, m: Optional[int] = None) -> GenSeriesT:
    """Euler product over irreducibles.

    With ``m`` None this is prod_j (1 - t^j)^(-M_j), the generating series
    of all monic polynomials; with ``m`` given each factor is truncated to
    multiplicity m.
    """
    _check_n(n)
    ring = RatFuncQ if is_inf(n) else PolyQ
    acc = GenSeriesT.one(order, ring)
    for j in range(1, order + 1):
        mj = _irr(j, n)
        factor = geometric_power(mj, j, order) if m is None else bounded_power(mj, j, m, order)
        acc = acc * factor
    return acc


def bounded_mult_total(d: int, n: int, m: int) -> PolyQ:
    """Monic degree-d polynomials in n variables with every factor of multiplicity <= m."""
    if d < 1 or n < 1 or m < 1:
        raise OutOfRange("bounded_mult_total needs d, n, m >= 1")
    return zeta_series(n, d, m)[d]


# -- n = INF ----------------------------------------------------------------------------

def _liminal_irr_explicit(d: int) -> RatFuncQ:
    acc = RatFuncQ()
    for e in divisors(d):
        mu = mobius(d // e)
        if mu:
            acc = acc + INVOLUTION_POINT ** e * mu
    return -acc / d


@lru_cache(maxsize=None)
def _liminal_irr_recursive(d: int) -> RatFuncQ:
    if d == 1:
        return -INVOLUTION_POINT
    acc = RatFuncQ()
    for lam in partitions_of(d)[1:]:
        acc = acc - _type_product(lam, _liminal_irr_recursive, poly_multichoose)
    return acc


@lru_cache(maxsize=None)
def liminal_irr(d: int) -> RatFuncQ:
    """Limit of irr_count(d, n) as n grows, computed two ways and compared."""
    if d < 1:
        raise OutOfRange("liminal_irr needs d >= 1")
    explicit = _liminal_irr_explicit(d)
    recursive = _liminal_irr_recursive(d)
    if explicit != recursive:
        raise InternalInconsistency(
            f"liminal irreducible count at d={d}: explicit {explicit} != recursive {recursive}"
        )
    return explicit


def liminal_type(lam: Partition) -> RatFuncQ:
    return _type_product(lam, liminal_irr, poly_multichoose)


def liminal_sf_type(lam: Partition) -> RatFuncQ:
    return _type_product(lam, liminal_irr, poly_binomial)


def liminal_total(d: int) -> RatFuncQ:
    if d < 0:
        raise OutOfRange("liminal_total needs d >= 0")
    if d == 0:
        return RatFuncQ.one()
    return -INVOLUTION_POINT if d == 1 else RatFuncQ()


def liminal_bounded_total(d: int, m: int) -> RatFuncQ:
    """Closed form for the limit of bounded_mult_total(d, n, m), keyed on d mod (m+1)."""
    if d < 0 or m < 1:
        raise OutOfRange("liminal_bounded_total needs d >= 0 and m >= 1")
    k, r = divmod(d, m + 1)
    if r == 0:
        return INVOLUTION_POINT ** k
    if r == 1:
        return -(INVOLUTION_POINT ** (k + 1))
    return RatFuncQ()


# -- keyed dispatch ------------------------------------------------------------------

@dataclass(frozen=True)
class CountKey:
    """Names one counting object: degree, variables, optional type, multiplicity bound."""

    d: int
    n: Union[int, float]
    lam: Optional[Partition] = None
    m: Union[int, float] = INF

    def __post_init__(self):
        if self.d < 1:
            raise OutOfRange("degree must be >= 1")
        _check_n(self.n)
        if self.lam is not None and self.lam.d != self.d:
            raise OutOfRange(f"{self.lam} is not a partition of {self.d}")
        if not is_inf(self.m) and self.m < 1:
            raise OutOfRange("multiplicity bound must be >= 1")


def count(key: CountKey) -> Count:
    limit = is_inf(key.n)
    if key.lam is None:
        if is_inf(key.m):
            return liminal_total(key.d) if limit else total_count(key.d, key.n)
        return liminal_bounded_total(key.d, key.m) if limit else bounded_mult_total(key.d, key.n, key.m)
    if is_inf(key.m):
        return liminal_type(key.lam) if limit else type_poly(key.lam, key.n)
    if key.m == 1:
        return liminal_sf_type(key.lam) if limit else sf_type_poly(key.lam, key.n)
    raise NotImplementedError("per-type counts with 1 < m < INF have no closed form here")


# -- verification suites -----------------------------------------------------------

def verify_liminal_reciprocity(d_max: int) -> Report:
    if not 1 <= d_max <= 12:
        raise OutOfRange("verify_liminal_reciprocity needs 1 <= d_max <= 12")
    report = Report()
    for d in range(1, d_max + 1):
        report.check(
            "M_inf(q) = -M_1(q/(q-1))",
            {"d": d},
            liminal_irr(d),
            -substitute_involution(necklace(d)),
        )
        for lam in partitions_of(d):
            sign = -1 if lam.length % 2 else 1
            params = {"d": d, "lambda": str(lam)}
            report.check(
                "Tsf_inf(q) = (-1)^l T_1(q/(q-1))",
                params,
                liminal_sf_type(lam),
                substitute_involution(type_poly(lam, 1)) * sign,
            )
            report.check(
                "T_inf(q) = (-1)^l Tsf_1(q/(q-1))",
                params,
                liminal_type(lam),
                substitute_involution(sf_type_poly(lam, 1)) * sign,
            )
    return report


def verify_congruence(d_max: int, n_max: int) -> Report:
    """M_{d,n} and M_{d,INF} agree modulo q^(n+1)."""
    if not (1 <= d_max <= 8 and 1 <= n_max <= 8):
        raise OutOfRange("verify_congruence needs d_max, n_max in 1..8")
    report = Report()
    for d in range(1, d_max + 1):
        limit = liminal_irr(d)
        for n in range(1, n_max + 1):
            lhs = list(series_at_zero(limit, n).coeffs)
            finite = irr_count(d, n)
            rhs = [finite.coefficient(i) for i in range(n + 1)]
            report.check("M_n = M_inf mod q^(n+1)", {"d": d, "n": n}, lhs, rhs)
    return report


def verify_zeta_identities(n, t_order: int, ms: tuple[int, ...] = (1, 2)) -> Report:
    if not 1 <= t_order <= 12:
        raise OutOfRange("verify_zeta_identities needs 1 <= t_order <= 12")
    _check_n(n)
    report = Report()
    params = {"n": n, "t_order": t_order}

    cyclo = zeta_series(1, t_order)
    report.check(
        "cyclotomic: prod (1-t^d)^(-M_{d,1}) = 1/(1-qt)",
        params,
        cyclo,
        GenSeriesT(tuple(PolyQ.monomial(k) for k in range(t_order + 1))),
    )

    full = zeta_series(n, t_order)
    if is_inf(n):
        expected = [RatFuncQ.one(), -INVOLUTION_POINT] + [RatFuncQ()] * (t_order - 1)
        report.check(
            "prod (1-t^d)^(-M_{d,inf}) = 1 - t q/(q-1)",
            params,
            full,
            GenSeriesT(tuple(expected[: t_order + 1])),
        )
    else:
        expected = [PolyQ.one()] + [total_count(d, n) for d in range(1, t_order + 1)]
        report.check(
            "prod (1-t^d)^(-M_{d,n}) = sum P_{d,n} t^d",
            params,
            full,
            GenSeriesT(tuple(expected)),
        )

    for m in ms:
        bounded = zeta_series(n, t_order, m)
        report.check(
            "Z(T,t) = Z(T,t^(m+1)) Z(T^m,t)",
            {**params, "m": m},
            full,
            full.substitute_power(m + 1) * bounded,
        )
        if is_inf(n):
            closed = GenSeriesT(tuple(liminal_bounded_total(d, m) for d in range(t_order + 1)))
            report.check("Z(T^m_inf,t) matches closed-form P^m_{d,inf}", {**params, "m": m}, bounded, closed)
        elif m == 1:
            by_type = [PolyQ.one()] + [
                sum((sf_type_poly(lam, n) for lam in partitions_of(d)), PolyQ())
                for d in range(1, t_order + 1)
            ]
            report.check("Z(T^sf,t) = sum over types of Tsf", {**params, "m": m}, bounded, GenSeriesT(tuple(by_type)))
    return report


def carlitz_degree_check(d_max: int, n_max: int) -> Report:
    report = Report()
    for d in range(1, d_max + 1):
        for n in range(1, n_max + 1):
            report.check(
                "deg M_{d,n} = binom(d+n,d) - 1",
                {"d": d, "n": n},
                irr_count(d, n).degree,
                math.comb(d + n, d) - 1,
            )
    return report
