"""Residual bookkeeping for identity checks."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable

__all__ = ["Residual", "ResidualReport", "to_float", "point_repr"]


def to_float(x) -> float:
    """Magnitude of a real/complex/mpmath number as a Python float."""
    return float(abs(x))


def point_repr(point) -> Any:
    """JSON-friendly form of a sample point (complex -> [re, im])."""
    if point is None or isinstance(point, str):
        return point
    z = complex(point)
    return [z.real, z.imag]


@dataclass(frozen=True)
class Residual:
    """One identity evaluated at one index and sample point.

    ``relative`` is the absolute residual divided by the largest magnitude
    among the terms of the identity; pass/fail uses it.
    """

    identity: str
    n: int
    point: Any
    absolute: float
    relative: float
    tolerance: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return math.isfinite(self.relative) and self.relative <= self.tolerance

    def to_dict(self) -> dict:
        d = asdict(self)
        d["point"] = point_repr(self.point)
        d["pass"] = self.passed
        if not d["note"]:
            del d["note"]
        return d


@dataclass
class ResidualReport:
    """Ordered collection of :class:`Residual` records."""

    entries: list[Residual] = field(default_factory=list)

    def add(self, identity: str, n: int, point, residual, scale, tolerance: float, note: str = "") -> Residual:
        absolute = to_float(residual)
        scale = to_float(scale)
        if scale > 0:
            relative = absolute / scale
        else:
            relative = absolute
        entry = Residual(identity, int(n), point, absolute, relative, float(tolerance), note)
        self.entries.append(entry)
        return entry

    def extend(self, other: "ResidualReport | Iterable[Residual]") -> "ResidualReport":
        items = other.entries if isinstance(other, ResidualReport) else other
        self.entries.extend(items)
        return self

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[Residual]:
        return [e for e in self.entries if not e.passed]

    def max_relative(self, identity: str | None = None) -> float:
        vals = [e.relative for e in self.entries if identity is None or e.identity == identity]
        return max(vals) if vals else 0.0

    def identities(self) -> list[str]:
        seen: dict[str, None] = {}
        for e in self.entries:
            seen.setdefault(e.identity, None)
        return list(seen)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_records(self) -> list[dict]:
        return [e.to_dict() for e in self.entries]

    def to_json(self) -> str:
        return json.dumps(self.to_records())
