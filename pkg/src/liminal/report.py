"""Structured pass/fail reports produced by the verify_* functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import PolyQ, RatFuncQ, SeriesQ, format_rational


def to_jsonable(x: Any) -> Any:
    if isinstance(x, (PolyQ, RatFuncQ, SeriesQ)):
        return x.to_json()
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return "inf" if x == float("inf") else x
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


@dataclass
class ReportEntry:
    identity: str
    params: dict
    passed: bool
    lhs: Any = None
    rhs: Any = None

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": to_jsonable(self.params),
            "pass": self.passed,
            "lhs": to_jsonable(self.lhs),
            "rhs": to_jsonable(self.rhs),
        }


@dataclass
class Report:
    entries: list[ReportEntry] = field(default_factory=list)

    def check(self, identity: str, params: dict, lhs: Any, rhs: Any) -> bool:
        """Record an exact equality check and return whether it held."""
        ok = bool(lhs == rhs)
        self.entries.append(ReportEntry(identity, dict(params), ok, lhs, rhs))
        return ok

    def record(self, identity: str, params: dict, passed: bool, lhs: Any = None, rhs: Any = None) -> bool:
        self.entries.append(ReportEntry(identity, dict(params), bool(passed), lhs, rhs))
        return bool(passed)

    def extend(self, other: "Report") -> "Report":
        self.entries.extend(other.entries)
        return self

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> list[ReportEntry]:
        return [e for e in self.entries if not e.passed]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]
