"""Integer partitions and class functions of the symmetric group.

A class function of S_d is stored as a map from partitions of d (cycle
types) to rationals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterable, Mapping, Union

from .errors import DimensionMismatch, OutOfRange
from .exact import format_rational

MAX_DEGREE = 30


@dataclass(frozen=True, order=True)
class Partition:
    """A partition stored as its weakly decreasing list of parts."""

    parts: tuple[int, ...]
    d: int = field(init=False, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "d", sum(parts))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, s: str) -> "Partition":
        return cls.of(*(int(x) for x in s.split(",") if x.strip()))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def m(self, j: int) -> int:
        return self.parts.count(j)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    def __iter__(self):
        return iter(self.parts)


def _partitions_desc(d: int, largest: int):
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions_desc(d - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions_of(d: int) -> tuple[Partition, ...]:
    """All partitions of d in reverse lexicographic order: (d) first, (1^d) last."""
    if not 1 <= d <= MAX_DEGREE:
        raise OutOfRange(f"partitions_of needs 1 <= d <= {MAX_DEGREE}, got {d}")
    return tuple(Partition(p) for p in _partitions_desc(d, d))


def multiplicity(lam: Partition, j: int) -> int:
    return lam.m(j)


def z_of(lam: Partition) -> int:
    """Order of the centraliser of a permutation of cycle type ``lam``."""
    return prod(j ** m * factorial(m) for j, m in lam.multiplicities.items())


def sign_of(lam: Partition) -> int:
    return -1 if (lam.d - lam.length) % 2 else 1


class ClassFunction:
    """Rational-valued function on the partitions of d."""

    __slots__ = ("d", "values")

    def __init__(self, d: int, values: Mapping[Partition, Union[int, Fraction]]):
        keys = set(partitions_of(d))
        if set(values) != keys:
            missing = sorted(str(p) for p in keys - set(values))
            extra = sorted(str(p) for p in set(values) - keys)
            raise DimensionMismatch(
                f"class function on S_{d} must be keyed by all partitions of {d}"
                f" (missing {missing}, unexpected {extra})"
            )
        self.d = d
        self.values: dict[Partition, Fraction] = {
            lam: Fraction(values[lam]) for lam in partitions_of(d)
        }

    @classmethod
    def from_function(cls, d: int, fn: Callable[[Partition], Union[int, Fraction]]) -> "ClassFunction":
        return cls(d, {lam: fn(lam) for lam in partitions_of(d)})

    @classmethod
    def constant(cls, d: int, c: Union[int, Fraction] = 1) -> "ClassFunction":
        return cls.from_function(d, lambda lam: c)

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.values[lam]

    def __iter__(self):
        return iter(self.values.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.d == other.d and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.d, tuple(self.values.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{lam}: {format_rational(v)}" for lam, v in self.values.items())
        return f"ClassFunction(d={self.d}, {{{body}}})"

    def _same_d(self, other: "ClassFunction") -> None:
        if self.d != other.d:
            raise DimensionMismatch(f"class functions on S_{self.d} and S_{other.d}")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_d(other)
        return ClassFunction(self.d, {k: v + other[k] for k, v in self})

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            self._same_d(other)
            return ClassFunction(self.d, {k: v * other[k] for k, v in self})
        return ClassFunction(self.d, {k: v * other for k, v in self})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ClassFunction":
        return ClassFunction(self.d, {lam: v ** k for lam, v in self})

    def to_json(self) -> dict[str, str]:
        return {str(lam): format_rational(v) for lam, v in self}

    @classmethod
    def from_json(cls, d: int, data: Mapping[str, Union[str, int]]) -> "ClassFunction":
        return cls(d, {Partition.parse(k): Fraction(v) for k, v in data.items()})


def inner_product(p: ClassFunction, q: ClassFunction) -> Fraction:
    """<P, Q> = sum over cycle types of P(l) Q(l) / z_l."""
    if p.d != q.d:
        raise DimensionMismatch(f"inner product of class functions on S_{p.d} and S_{q.d}")
    return sum((p[lam] * q[lam] / z_of(lam) for lam in partitions_of(p.d)), Fraction(0))


def class_sizes(d: int) -> Iterable[tuple[Partition, int]]:
    n = factorial(d)
    for lam in partitions_of(d):
        yield lam, n // z_of(lam)
