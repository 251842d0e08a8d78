"""Character families of S_d read off from type-polynomial coefficients, and
first moments of factorization statistics.

``psi`` and ``phi`` come from the univariate type polynomials, ``sigma`` is
the signed binomial combination of ``psi`` that governs the squarefree
limit as the number of variables grows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .counting import (
    INF,
    INVOLUTION_POINT,
    bounded_mult_total,
    is_inf,
    liminal_bounded_total,
    liminal_sf_type,
    liminal_total,
    liminal_type,
    sf_type_poly,
    total_count,
    type_poly,
)
from .errors import DimensionMismatch, InternalInconsistency, IntegralityViolation, OutOfRange
from .exact import PolyQ, RatFuncQ
from .partitions import ClassFunction, Partition, inner_product, partitions_of, sign_of, z_of
from .report import Report

MAX_D = 12


class Kind(str, enum.Enum):
    PSI = "psi"
    PHI = "phi"
    SIGMA = "sigma"


@dataclass(frozen=True)
class CharacterFamily:
    d: int
    kind: Kind
    table: dict  # k -> ClassFunction, k = 0..d-1

    def __getitem__(self, k: int) -> ClassFunction:
        return self.table[k]

    def row(self, lam: Partition) -> list[int]:
        return [int(self.table[k][lam]) for k in range(self.d)]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "kind": self.kind.value,
            "rows": {str(lam): self.row(lam) for lam in partitions_of(self.d)},
        }


def _check_d(d: int) -> None:
    if not 1 <= d <= MAX_D:
        raise OutOfRange(f"character families need 1 <= d <= {MAX_D}, got {d}")


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise IntegralityViolation(f"{what} = {x} is not an integer")
    return x.numerator


def _family_from_polys(d: int, kind: Kind, polys: dict, signed: bool) -> CharacterFamily:
    # polys[lam] = z_lam * (type polynomial), of degree d with zero constant term
    table: dict[int, dict] = {k: {} for k in range(d)}
    for lam, p in polys.items():
        if p.degree > d or p.coefficient(0):
            raise InternalInconsistency(f"z*T for {lam} is not of the form sum_k c_k q^(d-k): {p}")
        for k in range(d):
            c = p.coefficient(d - k)
            if signed and k % 2:
                c = -c
            table[k][lam] = _integral(c, f"{kind.value}_{d}^{k}({lam})")
    return CharacterFamily(d, kind, {k: ClassFunction(d, v) for k, v in table.items()})


@lru_cache(maxsize=None)
def psi_family(d: int) -> CharacterFamily:
    """psi_d^k(lam) is the coefficient of q^(d-k) in z_lam * T_{lam,1}(q)."""
    _check_d(d)
    polys = {lam: type_poly(lam, 1) * z_of(lam) for lam in partitions_of(d)}
    return _family_from_polys(d, Kind.PSI, polys, signed=False)


@lru_cache(maxsize=None)
def phi_family(d: int) -> CharacterFamily:
    """phi_d^k(lam) is (-1)^k times the q^(d-k) coefficient of z_lam * Tsf_{lam,1}(q)."""
    _check_d(d)
    polys = {lam: sf_type_poly(lam, 1) * z_of(lam) for lam in partitions_of(d)}
    return _family_from_polys(d, Kind.PHI, polys, signed=True)


def _sigma_from_psi(d: int) -> dict[int, ClassFunction]:
    psi = psi_family(d)
    table = {}
    for k in range(d):
        vals = {}
        for lam in partitions_of(d):
            s = sum(math.comb(j, k) * psi[j][lam] for j in range(k, d))
            vals[lam] = sign_of(lam) * s
        table[k] = ClassFunction(d, vals)
    return table


def _sigma_from_liminal(d: int) -> CharacterFamily:
    # z_lam (1-q)^d Tsf_{lam,INF}(q) = sum_k (-1)^k sigma_d^k(lam) q^(d-k)
    one_minus_q = PolyQ((1, -1)) ** d
    polys = {}
    for lam in partitions_of(d):
        r = liminal_sf_type(lam) * one_minus_q * z_of(lam)
        if not r.is_polynomial:
            raise InternalInconsistency(f"z (1-q)^d Tsf_inf for {lam} is not a polynomial: {r}")
        polys[lam] = r.to_poly()
    return _family_from_polys(d, Kind.SIGMA, polys, signed=True)


@lru_cache(maxsize=None)
def sigma_family(d: int) -> CharacterFamily:
    """sigma_d^k = sum_{j=k}^{d-1} binom(j, k) sgn_d psi_d^j.

    Cross-checked against the coefficients of the limiting squarefree
    type functions; the two routes must agree exactly.
    """
    _check_d(d)
    table = _sigma_from_psi(d)
    other = _sigma_from_liminal(d)
    for k in range(d):
        if table[k] != other[k]:
            raise InternalInconsistency(f"sigma_{d}^{k}: psi route {table[k]} != liminal route {other[k]}")
    return CharacterFamily(d, Kind.SIGMA, table)


def family(d: int, kind: Union[Kind, str]) -> CharacterFamily:
    kind = Kind(kind)
    return {Kind.PSI: psi_family, Kind.PHI: phi_family, Kind.SIGMA: sigma_family}[kind](d)


# -- statistics ------------------------------------------------------------------------

@dataclass(frozen=True)
class Statistic:
    name: str
    fn: ClassFunction

    @property
    def d(self) -> int:
        return self.fn.d

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.fn[lam]

    def power(self, k: int) -> "Statistic":
        return Statistic(f"{self.name}^{k}", self.fn ** k)


def one_stat(d: int) -> Statistic:
    return Statistic("one", ClassFunction.constant(d, 1))


def linear_stat(d: int) -> Statistic:
    """Number of linear factors, counted with multiplicity."""
    return Statistic("linear", ClassFunction.from_function(d, lambda lam: lam.m(1)))


def sign_stat(d: int) -> Statistic:
    return Statistic("sign", ClassFunction.from_function(d, sign_of))


def ell_stat(d: int) -> Statistic:
    return Statistic("ell", ClassFunction.from_function(d, lambda lam: lam.length))


def indicator_stat(lam: Partition) -> Statistic:
    return Statistic(f"indicator:{lam}", ClassFunction.from_function(lam.d, lambda mu: int(mu == lam)))


def builtin_stats(d: int) -> list[Statistic]:
    stats = [one_stat(d), linear_stat(d), sign_stat(d), ell_stat(d)]
    stats.extend(indicator_stat(lam) for lam in partitions_of(d))
    return stats


def _check_stat(stat: Statistic, d: int) -> None:
    if stat.d != d:
        raise DimensionMismatch(f"statistic {stat.name} lives on S_{stat.d}, not S_{d}")


def first_moment(stat: Statistic, d: int, n, squarefree: bool = False):
    """Sum of ``stat`` over monic degree-d polynomials in n variables.

    Returns a PolyQ for finite n and the limiting RatFuncQ for n = INF.
    """
    _check_stat(stat, d)
    if is_inf(n):
        each = liminal_sf_type if squarefree else liminal_type
        acc = RatFuncQ()
    else:
        fn = sf_type_poly if squarefree else type_poly
        each = lambda lam: fn(lam, n)
        acc = PolyQ()
    for lam in partitions_of(d):
        v = stat[lam]
        if v:
            acc = acc + each(lam) * v
    return acc


def moment(stat: Statistic, k: int, d: int, n, squarefree: bool = False):
    """k-th moment of ``stat``: the first moment of its k-th power."""
    return first_moment(stat.power(k), d, n, squarefree)


def total_mass(d: int, n, squarefree: bool = False):
    if is_inf(n):
        return liminal_bounded_total(d, 1) if squarefree else liminal_total(d)
    return bounded_mult_total(d, n, 1) if squarefree else total_count(d, n)


def expected_value(stat: Statistic, d: int, n, squarefree: bool = False) -> RatFuncQ:
    mass = total_mass(d, n, squarefree)
    if not mass:
        raise ZeroDivisionError(f"no mass to average over at d={d}, n={n}")
    return RatFuncQ(first_moment(stat, d, n, squarefree)) / mass


def liminal_moment_via_characters(stat: Statistic, d: int) -> RatFuncQ:
    """(1-q)^(-d) sum_k (-1)^k <P, sigma_d^k> q^(d-k), checked against the direct sum."""
    _check_stat(stat, d)
    _check_d(d)
    sigma = sigma_family(d)
    num = PolyQ()
    for k in range(d):
        c = inner_product(stat.fn, sigma[k])
        num = num + PolyQ.monomial(d - k, -c if k % 2 else c)
    result = RatFuncQ(num, PolyQ((1, -1)) ** d)
    direct = first_moment(stat, d, INF, squarefree=True)
    if result != direct:
        raise InternalInconsistency(f"liminal moment of {stat.name}: characters {result} != direct {direct}")
    return result


def moment_via_univariate_characters(stat: Statistic, d: int, squarefree: bool = False) -> PolyQ:
    """sum_k <P, psi_d^k> q^(d-k), or sum_k (-1)^k <P, phi_d^k> q^(d-k) when squarefree."""
    _check_stat(stat, d)
    _check_d(d)
    fam = phi_family(d) if squarefree else psi_family(d)
    result = PolyQ()
    for k in range(d):
        c = inner_product(stat.fn, fam[k])
        if squarefree and k % 2:
            c = -c
        result = result + PolyQ.monomial(d - k, c)
    direct = first_moment(stat, d, 1, squarefree)
    if result != direct:
        raise InternalInconsistency(f"univariate moment of {stat.name}: characters {result} != direct {direct}")
    return result


class SignMode(str, enum.Enum):
    UNIVARIATE = "univariate"
    LIMINAL_SQUAREFREE = "liminal-squarefree"


def expected_sign(d: int, mode: Union[SignMode, str]) -> RatFuncQ:
    mode = SignMode(mode)
    if d < 1:
        raise OutOfRange("expected_sign needs d >= 1")
    sgn = sign_stat(d)
    if mode is SignMode.UNIVARIATE:
        value = RatFuncQ(first_moment(sgn, d, 1)) / total_count(d, 1)
        expected = RatFuncQ(1, PolyQ.monomial(d // 2))
    else:
        value = first_moment(sgn, d, INF, squarefree=True) / liminal_bounded_total(d, 1)
        expected = INVOLUTION_POINT ** (d // 2)
    if value != expected:
        raise InternalInconsistency(f"expected sign at d={d} ({mode.value}): {value} != {expected}")
    return value


# -- dimensions ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def stirling_first_unsigned(m: int, n: int) -> int:
    """Number of permutations of m elements with exactly n cycles."""
    if not (0 <= m <= 30 and n >= 0):
        raise OutOfRange("stirling_first_unsigned needs 0 <= n <= m <= 30")
    if n > m:
        return 0
    if m == 0:
        return 1
    if n == 0:
        return 0
    return (m - 1) * stirling_first_unsigned(m - 1, n) + stirling_first_unsigned(m - 1, n - 1)


def double_factorial(k: int) -> int:
    return math.prod(range(k, 0, -2))


def sigma_dimension(d: int, k: int) -> int:
    """sum_{i=k}^{d-1} c(d, d-i) binom(i, i-k)."""
    return sum(stirling_first_unsigned(d, d - i) * math.comb(i, i - k) for i in range(k, d))


def verify_dimension_identities(d_max: int) -> Report:
    if not 1 <= d_max <= 10:
        raise OutOfRange("verify_dimension_identities needs 1 <= d_max <= 10")
    report = Report()
    for d in range(1, d_max + 1):
        ident = Partition((1,) * d)
        sigma = sigma_family(d)
        psi = psi_family(d)
        dims = [int(sigma[k][ident]) for k in range(d)]
        for k in range(d):
            report.check("dim Sigma_d^k = Stirling/binomial sum", {"d": d, "k": k}, dims[k], sigma_dimension(d, k))
        report.check("sum_k dim Sigma_d^k = (2d-1)!!", {"d": d}, sum(dims), double_factorial(2 * d - 1))
        regular = ClassFunction.from_function(d, lambda lam: math.factorial(d) if lam == ident else 0)
        report.check("sigma_d^0 = regular character", {"d": d}, sigma[0], regular)
        report.check(
            "sum_j psi_d^j(1^d) = d!",
            {"d": d},
            sum(int(psi[j][ident]) for j in range(d)),
            math.factorial(d),
        )
    return report


def verify_character_identities(d_max: int) -> Report:
    """Integrality, moment cross-checks and sign multiplicities for d <= d_max."""
    if not 1 <= d_max <= 10:
        raise OutOfRange("verify_character_identities needs 1 <= d_max <= 10")
    report = Report()
    for d in range(1, d_max + 1):
        for kind in Kind:
            fam = family(d, kind)
            integral = all(v.denominator == 1 for k in range(d) for _, v in fam[k])
            report.record(f"{kind.value} values are integers", {"d": d}, integral)
        psi = psi_family(d)
        report.check("psi_d^0 = trivial character", {"d": d}, psi[0], ClassFunction.constant(d, 1))
        sgn = sign_stat(d)
        report.check(
            "<sgn, psi_d^k> = [k = floor(d/2)]",
            {"d": d},
            [inner_product(sgn.fn, psi[k]) for k in range(d)],
            [int(k == d // 2) for k in range(d)],
        )
        for stat in builtin_stats(d):
            params = {"d": d, "stat": stat.name}
            try:
                liminal_moment_via_characters(stat, d)
                ok = True
            except InternalInconsistency:
                ok = False
            report.record("liminal moment via sigma = direct", params, ok)
            for squarefree in (False, True):
                try:
                    moment_via_univariate_characters(stat, d, squarefree)
                    ok = True
                except InternalInconsistency:
                    ok = False
                report.record("univariate moment via psi/phi = direct", {**params, "squarefree": squarefree}, ok)
    return report
