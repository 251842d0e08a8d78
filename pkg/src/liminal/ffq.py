"""Brute-force census of monic polynomials over small finite fields.

This is the ground truth the closed forms in :mod:`liminal.counting` are
checked against.  Nothing here factors a polynomial.  For each degree e,
every reducible monic polynomial is produced exactly once as a product of
a multiset of lower-degree irreducibles; the monic polynomials left over
are the irreducibles of degree e.

Polynomials of total degree <= D in n variables are stored densely over
the monomial basis sorted by the chosen monomial order and encoded as the
integer sum_i c_i q**i, where c_i in 0..q-1 is the coefficient of the
i-th basis monomial.  The guard q**len(basis) <= 2**32 keeps keys in int64.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .counting import bounded_mult_total, irr_count, necklace, sf_type_poly, total_count, type_poly
from .errors import InternalInconsistency, TooLarge, UnsupportedField
from .partitions import Partition, partitions_of
from .report import Report

KEY_LIMIT = 2 ** 32
MAX_POLYS = 10 ** 7

GRLEX = "grlex"
LEX = "lex"

# q -> (p, ascending coefficients of the monic defining polynomial over F_p)
_MODULI = {
    2: (2, (0, 1)),
    3: (3, (0, 1)),
    5: (5, (0, 1)),
    7: (7, (0, 1)),
    4: (2, (1, 1, 1)),     # t^2 + t + 1
    8: (2, (1, 1, 0, 1)),  # t^3 + t + 1
    9: (3, (1, 0, 1)),     # t^2 + 1
}


class Fq:
    """The field with q elements, as F_p[t]/(modulus).

    Elements are the integers 0..q-1; the base-p digits of an element are
    its coefficients on 1, t, t^2, ...
    """

    def __init__(self, q: int):
        if q not in _MODULI:
            raise UnsupportedField(f"no built-in field with {q} elements (supported: {sorted(_MODULI)})")
        p, modulus = _MODULI[q]
        self.q, self.p, self.modulus = q, p, modulus
        self.e = len(modulus) - 1
        if not self._modulus_irreducible():
            raise InternalInconsistency(f"modulus {modulus} is reducible over F_{p}")
        vecs = [self.vector(a) for a in range(q)]
        self.add_table = np.array(
            [[self.element([(x + y) % p for x, y in zip(u, v)]) for v in vecs] for u in vecs],
            dtype=np.int64,
        )
        self.mul_table = np.array([[self.element(self._mulvec(u, v)) for v in vecs] for u in vecs], dtype=np.int64)
        self.neg_table = np.array([self.element([(-x) % p for x in u]) for u in vecs], dtype=np.int64)
        inv = [0] * q
        for a in range(1, q):
            hits = [b for b in range(1, q) if self.mul_table[a, b] == 1]
            if len(hits) != 1:
                raise InternalInconsistency(f"element {a} of F_{q} has no unique inverse")
            inv[a] = hits[0]
        self.inv_table = np.array(inv, dtype=np.int64)

    def _modulus_irreducible(self) -> bool:
        # degree <= 3: irreducible iff no root in F_p
        if self.e == 1:
            return True
        return all(sum(c * x ** i for i, c in enumerate(self.modulus)) % self.p for x in range(self.p))

    def vector(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def element(self, vec) -> int:
        return sum(int(c) * self.p ** i for i, c in enumerate(vec))

    def _mulvec(self, u, v) -> list[int]:
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus, highest degree first
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if c:
                for i, m in enumerate(self.modulus):
                    prod[k - e + i] = (prod[k - e + i] - c * m) % p
        return prod[:e]

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv_table[a])

    def __repr__(self) -> str:
        return f"Fq({self.q})"


def make_field(q: int) -> Fq:
    return Fq(q)


# -- monomials ------------------------------------------------------------------------

def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors of length n and total degree k."""
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in _compositions(n - 1, k - first):
            yield (first,) + rest


def order_key(order: str):
    """Sort key on exponent vectors; x1 > x2 > ... in both orders."""
    if order == GRLEX:
        return lambda e: (sum(e), e)
    if order == LEX:
        return lambda e: e
    raise ValueError(f"unknown monomial order {order!r}")


class MonomialBasis:
    """Monomials of total degree <= D in n variables, ascending in the order."""

    def __init__(self, n: int, D: int, order: str = GRLEX):
        self.n, self.D, self.order = n, D, order
        monos = [e for k in range(D + 1) for e in _compositions(n, k)]
        monos.sort(key=order_key(order))
        self.monos: list[tuple[int, ...]] = monos
        self.index = {m: i for i, m in enumerate(monos)}
        self.degrees = np.array([sum(m) for m in monos], dtype=np.int64)
        N = len(monos)
        self.product_index = np.full((N, N), -1, dtype=np.int64)
        for i, a in enumerate(monos):
            for j, b in enumerate(monos):
                c = tuple(x + y for x, y in zip(a, b))
                if sum(c) <= D:
                    self.product_index[i, j] = self.index[c]

    def __len__(self) -> int:
        return len(self.monos)

    def positions_upto(self, e: int) -> np.ndarray:
        return np.flatnonzero(self.degrees <= e)


def _check_size(q: int, n: int, d: int) -> None:
    width = math.comb(d + n, n)
    if q ** width > KEY_LIMIT:
        raise TooLarge(f"q^binom(d+n,n) = {q}^{width} exceeds 2^32")
    if int(total_count(d, n)(q)) > MAX_POLYS:
        raise TooLarge(f"more than {MAX_POLYS} monic polynomials of degree {d} in {n} variables over F_{q}")


# -- sparse polynomials -----------------------------------------------------------------

class FqPoly:
    """Sparse polynomial over ``field``: exponent vector -> nonzero element."""

    __slots__ = ("field", "n", "terms", "order")

    def __init__(self, field: Fq, n: int, terms: Mapping[tuple[int, ...], int], order: str = GRLEX):
        self.field, self.n, self.order = field, n, order
        self.terms = {tuple(e): int(c) for e, c in terms.items() if c}

    @classmethod
    def from_key(cls, field: Fq, basis: MonomialBasis, key: int) -> "FqPoly":
        terms = {}
        for mono in basis.monos:
            key, c = divmod(key, field.q)
            if c:
                terms[mono] = c
        return cls(field, basis.n, terms, basis.order)

    def key(self, basis: MonomialBasis) -> int:
        return sum(c * self.field.q ** basis.index[e] for e, c in self.terms.items())

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def leading_monomial(self) -> tuple[int, ...]:
        return max(self.terms, key=order_key(self.order))

    @property
    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial] if self.terms else 0

    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        F = self.field
        out: dict[tuple[int, ...], int] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                e = tuple(i + j for i, j in zip(a, b))
                out[e] = F.add(out.get(e, 0), F.mul(x, y))
        return FqPoly(F, self.n, out, self.order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self.field.q == other.field.q and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field.q, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        def mono(e):
            parts = [f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
            return "*".join(parts) or "1"

        items = sorted(self.terms.items(), key=lambda t: order_key(self.order)(t[0]), reverse=True)
        return " + ".join((mono(e) if c == 1 and any(e) else f"{c}*{mono(e)}" if any(e) else str(c)) for e, c in items) or "0"


# -- vectorised kernels ---------------------------------------------------------------------

class _Codec:
    def __init__(self, field: Fq, basis: MonomialBasis):
        self.field, self.basis = field, basis
        self.weights = np.array([field.q ** i for i in range(len(basis))], dtype=np.int64)

    def decode(self, keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        out = np.empty((len(keys), len(self.basis)), dtype=np.int64)
        rest = keys.copy()
        for i in range(len(self.basis)):
            rest, out[:, i] = np.divmod(rest, self.field.q)
        return out

    def encode(self, mat: np.ndarray) -> np.ndarray:
        return mat @ self.weights

    def multiply_rows(self, A: np.ndarray, B: np.ndarray, deg_a: int, deg_b: int) -> np.ndarray:
        """Row-wise products A[i] * B[i]."""
        add, mul = self.field.add_table, self.field.mul_table
        out = np.zeros((A.shape[0], len(self.basis)), dtype=np.int64)
        pos_b = [b for b in self.basis.positions_upto(deg_b) if B[:, b].any()]
        for a in self.basis.positions_upto(deg_a):
            col = A[:, a]
            if not col.any():
                continue
            for b in pos_b:
                t = self.basis.product_index[a, b]
                out[:, t] = add[out[:, t], mul[col, B[:, b]]]
        return out

    def monic_keys(self, e: int) -> np.ndarray:
        """Keys of every monic polynomial of total degree exactly e, ascending."""
        q = self.field.q
        support = self.basis.positions_upto(e)
        degs = self.basis.degrees
        chunks = []
        for lead in support:
            keys = np.array([q ** int(lead)], dtype=np.int64)
            has_top = np.array([degs[lead] == e])
            for s in support:
                if s >= lead:
                    break
                digits = np.arange(q, dtype=np.int64)
                keys = (keys[:, None] + digits[None, :] * q ** int(s)).ravel()
                if degs[s] == e:
                    has_top = (has_top[:, None] | (digits > 0)[None, :]).ravel()
                else:
                    has_top = np.repeat(has_top, q)
            chunks.append(keys[has_top])
        return np.sort(np.concatenate(chunks))


# -- census -------------------------------------------------------------------------------

@dataclass
class CensusResult:
    q: int
    n: int
    d: int
    counts: dict  # Partition -> (total, squarefree)
    irreducible: int
    order: str = GRLEX

    @property
    def total(self) -> int:
        return sum(t for t, _ in self.counts.values())

    @property
    def squarefree(self) -> int:
        return sum(s for _, s in self.counts.values())

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "d": self.d,
            "irreducible": self.irreducible,
            "types": {str(lam): {"total": t, "squarefree": s} for lam, (t, s) in self.counts.items()},
        }


def enumerate_monic(field: Fq, n: int, d: int, order: str = GRLEX) -> Iterator[FqPoly]:
    """Every monic polynomial of total degree d in n variables, in ascending key order."""
    _check_size(field.q, n, d)
    basis = MonomialBasis(n, d, order)
    for key in _Codec(field, basis).monic_keys(d):
        yield FqPoly.from_key(field, basis, int(key))


def _type_products(codec: _Codec, irr: dict, lam: Partition):
    """All products of irreducible multisets of type lam, with squarefree flags."""
    rows = sf = None
    deg = 0
    for j, m in sorted(lam.multiplicities.items()):
        pool = irr[j]
        combos = np.array(list(itertools.combinations_with_replacement(range(len(pool)), m)), dtype=np.int64)
        if combos.size == 0:
            return np.zeros((0, len(codec.basis)), dtype=np.int64), np.zeros(0, dtype=bool)
        g = pool[combos[:, 0]]
        for t in range(1, m):
            g = codec.multiply_rows(g, pool[combos[:, t]], j * t, j)
        g_sf = np.all(combos[:, 1:] != combos[:, :-1], axis=1)
        if rows is None:
            rows, sf = g, g_sf
        else:
            k1, k2 = len(rows), len(g)
            i1 = np.repeat(np.arange(k1), k2)
            i2 = np.tile(np.arange(k2), k1)
            rows = codec.multiply_rows(rows[i1], g[i2], deg, j * m)
            sf = sf[i1] & g_sf[i2]
        deg += j * m
    return rows, sf


def census_all(field: Fq, n: int, d: int, order: str = GRLEX) -> dict[int, CensusResult]:
    """Run the product sieve for every degree 1..d and return one result per degree."""
    _check_size(field.q, n, d)
    basis = MonomialBasis(n, d, order)
    codec = _Codec(field, basis)
    irr: dict[int, np.ndarray] = {}
    results: dict[int, CensusResult] = {}
    for e in range(1, d + 1):
        monic = codec.monic_keys(e)
        counts: dict[Partition, tuple[int, int]] = {}
        reducible = []
        for lam in partitions_of(e)[1:]:
            rows, sf = _type_products(codec, irr, lam)
            keys = codec.encode(rows)
            reducible.append(keys)
            counts[lam] = (len(keys), int(sf.sum()))
        red = np.concatenate(reducible) if reducible else np.zeros(0, dtype=np.int64)
        if len(np.unique(red)) != len(red):
            raise InternalInconsistency(f"degree {e}: some product was generated twice")
        if not np.isin(red, monic, assume_unique=True).all():
            raise InternalInconsistency(f"degree {e}: a product of monics is not monic of degree {e}")
        irreducible = np.setdiff1d(monic, red, assume_unique=True)
        counts = {Partition((e,)): (len(irreducible), len(irreducible)), **counts}
        result = CensusResult(field.q, n, e, counts, len(irreducible), order)
        if result.total != len(monic):
            raise InternalInconsistency(f"degree {e}: type counts sum to {result.total}, not {len(monic)}")
        results[e] = result
        if e < d:
            irr[e] = codec.decode(irreducible)
    return results


def census(field: Fq, n: int, d: int, order: str = GRLEX) -> CensusResult:
    return census_all(field, n, d, order)[d]


def verify_against_closed_forms(field: Fq, n: int, d_max: int) -> Report:
    """Compare census counts for degrees 1..d_max with the counting polynomials at q."""
    report = Report()
    q = field.q
    for e, res in census_all(field, n, d_max).items():
        params = {"q": q, "n": n, "d": e}
        report.check("census total = P_{d,n}(q)", params, res.total, total_count(e, n)(q))
        report.check("census irreducible = M_{d,n}(q)", params, res.irreducible, irr_count(e, n)(q))
        report.check("census squarefree = P^sf_{d,n}(q)", params, res.squarefree, bounded_mult_total(e, n, 1)(q))
        if n == 1:
            report.check("census irreducible = necklace(q)", params, res.irreducible, necklace(e)(q))
        for lam, (tot, sf) in res.counts.items():
            lp = {**params, "lambda": str(lam)}
            report.check("census type total = T_{lambda,n}(q)", lp, tot, type_poly(lam, n)(q))
            report.check("census type squarefree = Tsf_{lambda,n}(q)", lp, sf, sf_type_poly(lam, n)(q))
    return report
