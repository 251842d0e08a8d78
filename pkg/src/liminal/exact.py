"""Exact arithmetic in one variable q over the rationals.

Dense polynomials (:class:`PolyQ`), reduced rational functions
(:class:`RatFuncQ`) and truncated power series at q = 0 or q = infinity
(:class:`SeriesQ`).  Rationals are plain :class:`fractions.Fraction`.
All values are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Union

from .errors import DegenerateSubstitution, PoleAtZero

Rational = Fraction
Scalar = Union[int, Fraction]

NEG_INF = float("-inf")
DEFAULT_ORDER = 16

AT_ZERO = "zero"
AT_INFINITY = "infinity"


def format_rational(x: Scalar) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: Union[str, int, Fraction]) -> Fraction:
    return Fraction(s)


# -- integer convolution -----------------------------------------------------

def _convolve_naive(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _convolve(a: list[int], b: list[int]) -> list[int]:
    # Kronecker substitution: pack both operands into one big integer each,
    # let the bigint multiply do the work, unpack with signed digits.
    if min(len(a), len(b)) < 16:
        return _convolve_naive(a, b)
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    packed_a = 0
    for c in reversed(a):
        packed_a = (packed_a << bits) + c
    packed_b = 0
    for c in reversed(b):
        packed_b = (packed_b << bits) + c
    prod = packed_a * packed_b
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    for _ in range(len(a) + len(b) - 1):
        low = prod & mask
        if low >= half:
            low -= 1 << bits
        out.append(low)
        prod = (prod - low) >> bits
    return out


def _scaled_ints(cs: tuple[Fraction, ...]) -> tuple[list[int], int]:
    den = lcm(*(c.denominator for c in cs))
    return [c.numerator * (den // c.denominator) for c in cs], den


# -- polynomials ---------------------------------------------------------------

class PolyQ:
    """Dense polynomial in q; ``coeffs[i]`` is the coefficient of q**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...]) -> "PolyQ":
        p = cls.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def zero(cls) -> "PolyQ":
        return cls()

    @classmethod
    def one(cls) -> "PolyQ":
        return cls((1,))

    @classmethod
    def q(cls) -> "PolyQ":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> "PolyQ":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "PolyQ":
        return cls([0] * k + [c])

    @property
    def degree(self) -> Union[int, float]:
        """Degree, with ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __hash__(self) -> int:
        return hash(("PolyQ", self.coeffs))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyQ((other,)).coeffs
        return NotImplemented

    def __repr__(self) -> str:
        return f"PolyQ([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        return format_poly(self)

    # ring operations

    def __neg__(self) -> "PolyQ":
        return PolyQ._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ((other,))
        elif not isinstance(other, PolyQ):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ((other,))
        elif not isinstance(other, PolyQ):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyQ((other,)) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return PolyQ()
            return PolyQ._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, PolyQ):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return PolyQ()
        a, da = _scaled_ints(self.coeffs)
        b, db = _scaled_ints(other.coeffs)
        den = da * db
        return PolyQ._raw(tuple(Fraction(c, den) for c in _convolve(a, b)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyQ":
        if k < 0:
            raise ValueError("negative power of a polynomial; use RatFuncQ")
        result, base = PolyQ.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial divided by zero")
            inv = 1 / Fraction(other)
            return PolyQ._raw(tuple(c * inv for c in self.coeffs))
        if isinstance(other, PolyQ):
            return RatFuncQ(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFuncQ(PolyQ((other,)), self)
        return NotImplemented

    def __divmod__(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = len(other.coeffs) - 1
        if len(rem) - 1 < dd:
            return PolyQ(), self
        inv_lc = 1 / other.coeffs[-1]
        dcs = other.coeffs
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if not c:
                continue
            c *= inv_lc
            quot[i - dd] = c
            shift = i - dd
            for j in range(dd + 1):
                rem[shift + j] -= c * dcs[j]
        return PolyQ(quot), PolyQ(rem[:dd])

    def __floordiv__(self, other: "PolyQ") -> "PolyQ":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyQ") -> "PolyQ":
        return divmod(self, other)[1]

    def exact_div(self, other: "PolyQ") -> "PolyQ":
        quot, rem = divmod(self, other)
        if rem:
            raise ArithmeticError(f"{other} does not divide {self}")
        return quot

    def monic(self) -> "PolyQ":
        return self / self.lc if self.coeffs else self

    def truncate(self, n: int) -> "PolyQ":
        """Terms of degree <= n."""
        return PolyQ(self.coeffs[: n + 1])

    def __call__(self, x):
        """Evaluate by Horner's rule; ``x`` may be a scalar, PolyQ or RatFuncQ."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list) -> "PolyQ":
        return cls(Fraction(s) for s in data)


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd by the plain Euclidean algorithm (exact over Q)."""
    while b:
        a, b = b, a % b
    return a.monic()


# -- rational functions ----------------------------------------------------------

def _as_poly(x) -> PolyQ:
    if isinstance(x, PolyQ):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyQ((x,))
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


class RatFuncQ:
    """Rational function num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        num = _as_poly(num)
        den = PolyQ.one() if den is None else _as_poly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = PolyQ(), PolyQ.one()
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        c = den.lc
        if c != 1:
            num = num / c
            den = den / c
        self.num: PolyQ = num
        self.den: PolyQ = den

    @classmethod
    def _raw(cls, num: PolyQ, den: PolyQ) -> "RatFuncQ":
        r = cls.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def zero(cls) -> "RatFuncQ":
        return cls()

    @classmethod
    def one(cls) -> "RatFuncQ":
        return cls(1)

    @classmethod
    def q(cls) -> "RatFuncQ":
        return cls(PolyQ.q())

    def normalize(self) -> "RatFuncQ":
        return RatFuncQ(self.num, self.den)

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def to_poly(self) -> PolyQ:
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __hash__(self) -> int:
        return hash(("RatFuncQ", self.num.coeffs, self.den.coeffs))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, PolyQ)):
            other = RatFuncQ(other)
        if isinstance(other, RatFuncQ):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __repr__(self) -> str:
        return f"RatFuncQ({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        return format_ratfunc(self)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFuncQ):
            return x
        if isinstance(x, (int, Fraction, PolyQ)):
            return RatFuncQ._raw(_as_poly(x), PolyQ.one())
        return None

    def __neg__(self) -> "RatFuncQ":
        return RatFuncQ._raw(-self.num, self.den)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFuncQ(self.num + o.num, self.den)
        return RatFuncQ(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFuncQ()
            return RatFuncQ._raw(self.num * other, self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFuncQ(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("rational function divided by zero")
            return RatFuncQ._raw(self.num / other, self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("rational function divided by zero")
        return RatFuncQ(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> "RatFuncQ":
        if k < 0:
            return RatFuncQ.one() / (self ** (-k))
        # num and den stay coprime under powers, so no gcd is needed
        num, den = self.num ** k, self.den ** k
        return RatFuncQ._raw(num, den)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFuncQ":
        return cls(PolyQ.from_json(data["num"]), PolyQ.from_json(data["den"]))


def as_ratfunc(x) -> RatFuncQ:
    if isinstance(x, RatFuncQ):
        return x
    return RatFuncQ(_as_poly(x))


# -- binomial-type operations ----------------------------------------------------

def _one_like(x):
    if isinstance(x, (PolyQ, RatFuncQ)):
        return type(x).one()
    return Fraction(1)


def poly_binomial(x, m: int):
    """x(x-1)...(x-m+1)/m! for a PolyQ, RatFuncQ or scalar ``x``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    result = _one_like(x)
    for i in range(m):
        result = result * (x - i)
    return result / factorial(m)


def poly_multichoose(x, m: int):
    """x(x+1)...(x+m-1)/m!, the number of size-m multisets from x things."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    result = _one_like(x)
    for i in range(m):
        result = result * (x + i)
    return result / factorial(m)


def substitute_involution(r) -> RatFuncQ:
    """Evaluate ``r`` at q/(q-1), i.e. at 1/(1 - 1/q).

    The map q -> q/(q-1) is its own inverse.  Numerator and denominator
    are homogenised to a common degree so the result needs one gcd only.
    """
    r = as_ratfunc(r)
    a = max(len(r.num.coeffs), len(r.den.coeffs)) - 1
    q = PolyQ.q()
    qm1 = PolyQ((-1, 1))
    q_pows = [PolyQ.one()]
    qm1_pows = [PolyQ.one()]
    for _ in range(a):
        q_pows.append(q_pows[-1] * q)
        qm1_pows.append(qm1_pows[-1] * qm1)

    def hom(p: PolyQ) -> PolyQ:
        acc = PolyQ()
        for i, c in enumerate(p.coeffs):
            if c:
                acc = acc + q_pows[i] * qm1_pows[a - i] * c
        return acc

    den = hom(r.den)
    if not den:
        raise DegenerateSubstitution(f"denominator of {r} vanishes under q -> q/(q-1)")
    return RatFuncQ(hom(r.num), den)


# -- truncated series -------------------------------------------------------------

@dataclass(frozen=True)
class SeriesQ:
    """Truncated expansion at q = 0 or at q = infinity.

    At zero, ``coeffs[i]`` is the coefficient of q**i (``lead`` is always 0).
    At infinity, ``coeffs[i]`` is the coefficient of q**(lead - i), so the
    series reads q**lead * (c0 + c1/q + c2/q**2 + ...).  Every listed
    coefficient is exact; nothing beyond index ``order`` is known.
    """

    at: str
    coeffs: tuple
    lead: int = 0

    def __post_init__(self):
        if self.at not in (AT_ZERO, AT_INFINITY):
            raise ValueError(f"unknown expansion point {self.at!r}")
        if not self.coeffs:
            raise ValueError("a series needs at least one coefficient")
        if self.at == AT_ZERO and self.lead != 0:
            raise ValueError("series at zero are power series (lead 0)")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def exponent(self, i: int) -> int:
        return i if self.at == AT_ZERO else self.lead - i

    def coefficient(self, exponent: int) -> Fraction:
        i = exponent if self.at == AT_ZERO else self.lead - exponent
        if i < 0:
            return Fraction(0)
        if i > self.order:
            raise ValueError(f"q^{exponent} lies beyond the truncation order")
        return self.coeffs[i]

    def truncate(self, n: int) -> "SeriesQ":
        if n > self.order:
            raise ValueError("cannot raise the truncation order")
        return SeriesQ(self.at, self.coeffs[: n + 1], self.lead)

    def _shifted(self, lead: int) -> tuple[Fraction, ...]:
        # re-express an at-infinity series against a larger lead exponent
        return (Fraction(0),) * (lead - self.lead) + self.coeffs

    def _check(self, other: "SeriesQ") -> None:
        if not isinstance(other, SeriesQ) or other.at != self.at:
            raise ValueError("series expanded at different points")

    def __neg__(self) -> "SeriesQ":
        return SeriesQ(self.at, tuple(-c for c in self.coeffs), self.lead)

    def __add__(self, other: "SeriesQ") -> "SeriesQ":
        self._check(other)
        lead = max(self.lead, other.lead)
        a, b = self._shifted(lead), other._shifted(lead)
        n = min(len(a), len(b))
        return SeriesQ(self.at, tuple(x + y for x, y in zip(a[:n], b[:n])), lead)

    def __sub__(self, other: "SeriesQ") -> "SeriesQ":
        return self + (-other)

    def __mul__(self, other: "SeriesQ") -> "SeriesQ":
        self._check(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1)]
        return SeriesQ(self.at, tuple(out), self.lead + other.lead)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append((c, self.exponent(i)))
        body = _format_terms(terms) if terms else "0"
        tail = self.exponent(self.order) + (1 if self.at == AT_ZERO else -1)
        return f"{body} + O(q^{tail})"

    def to_json(self) -> dict:
        return {
            "at": self.at,
            "lead": self.lead,
            "coeffs": [format_rational(c) for c in self.coeffs],
            "order": self.order,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SeriesQ":
        s = cls(data["at"], tuple(Fraction(c) for c in data["coeffs"]), int(data["lead"]))
        if s.order != int(data["order"]):
            raise ValueError("order does not match coefficient count")
        return s


def series_at_zero(r, n: int = DEFAULT_ORDER) -> SeriesQ:
    """Taylor coefficients of ``r`` at q = 0 through q**n."""
    r = as_ratfunc(r)
    num, den = r.num, r.den
    d0 = den.coefficient(0)
    if not d0:
        raise PoleAtZero(f"{r} has a pole at q = 0")
    inv = 1 / d0
    out: list[Fraction] = []
    for k in range(n + 1):
        acc = num.coefficient(k)
        for i in range(1, min(k, len(den.coeffs) - 1) + 1):
            acc -= den.coeffs[i] * out[k - i]
        out.append(acc * inv)
    return SeriesQ(AT_ZERO, tuple(out))


def series_at_infinity(r, n: int = DEFAULT_ORDER) -> SeriesQ:
    """Expansion of ``r`` in powers of 1/q.

    The lead exponent is deg(num) - deg(den) when that is positive and 0
    otherwise, so proper rational functions come out as ordinary series in
    1/q and improper ones carry the offset of their polynomial part.
    """
    r = as_ratfunc(r)
    if not r:
        return SeriesQ(AT_INFINITY, (0,) * (n + 1))
    a, b = len(r.num.coeffs) - 1, len(r.den.coeffs) - 1
    lead = max(a - b, 0)
    shift = lead - (a - b)
    # with u = 1/q:  r = q**(a-b) * num_rev(u) / den_rev(u)
    num_rev = PolyQ(reversed(r.num.coeffs))
    den_rev = PolyQ(reversed(r.den.coeffs))
    body = series_at_zero(RatFuncQ(num_rev, den_rev), max(n - shift, 0)).coeffs
    coeffs = ((Fraction(0),) * shift + body)[: n + 1]
    return SeriesQ(AT_INFINITY, coeffs, lead)


# -- pretty printing ----------------------------------------------------------------

def _format_terms(terms: list[tuple[Fraction, int]]) -> str:
    parts: list[str] = []
    for idx, (c, e) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        if e == 0:
            mono = ""
        elif e == 1:
            mono = "q"
        else:
            mono = f"q^{e}"
        if mag.denominator != 1:
            if idx == 0:
                body = f"({format_rational(c)}){mono}"
                parts.append(body)
                continue
            body = f"({format_rational(mag)}){mono}"
        elif mag == 1 and mono:
            body = mono
        else:
            body = f"{mag.numerator}{mono}"
        if idx == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def format_poly(p: PolyQ) -> str:
    """Ascending powers, rationals as a/b, explicit signs."""
    terms = [(c, i) for i, c in enumerate(p.coeffs) if c]
    return _format_terms(terms) if terms else "0"


def _power_of_q_minus_one(p: PolyQ) -> int | None:
    k = len(p.coeffs) - 1
    if k >= 1 and p == PolyQ((-1, 1)) ** k:
        return k
    return None


def format_ratfunc(r: RatFuncQ) -> str:
    if r.is_polynomial:
        return format_poly(r.num)
    num = format_poly(r.num)
    if sum(1 for c in r.num.coeffs if c) > 1:
        num = f"({num})"
    k = _power_of_q_minus_one(r.den)
    if k == 1:
        den = "(q-1)"
    elif k is not None:
        den = f"(q-1)^{k}"
    elif sum(1 for c in r.den.coeffs if c) == 1 and r.den.lc == 1:
        den = format_poly(r.den)
    else:
        den = f"({format_poly(r.den)})"
    return f"{num}/{den}"
