"""Lebesgue exponents in [1, inf] with conjugates.

An Exponent carries a value p and exposes the conjugate index p' defined by
1/p + 1/p' = 1, with the usual conventions p = 1 <-> p' = inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

__all__ = ["Exponent", "ONE", "TWO", "INF", "gap_exponent"]

_CONJUGATE_TOL = 1e-12


@total_ordering
@dataclass(frozen=True)
class Exponent:
    """A value p in [1, inf]; use math.inf for the essential-sup index."""

    value: float

    def __post_init__(self) -> None:
        v = float(self.value)
        if math.isnan(v) or v < 1.0:
            raise ValueError(f"exponent must lie in [1, inf], got {self.value!r}")
        object.__setattr__(self, "value", v)

    @property
    def conjugate(self) -> float:
        if self.value == 1.0:
            return math.inf
        if math.isinf(self.value):
            return 1.0
        return self.value / (self.value - 1.0)

    @property
    def conjugate_exponent(self) -> "Exponent":
        return Exponent(self.conjugate)

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.value)

    @property
    def is_one(self) -> bool:
        return self.value == 1.0

    def holder_ok(self) -> bool:
        """Check 1/p + 1/p' = 1 within tolerance (definitional, kept testable)."""
        inv = (0.0 if self.is_inf else 1.0 / self.value) + (
            0.0 if math.isinf(self.conjugate) else 1.0 / self.conjugate
        )
        return abs(inv - 1.0) <= _CONJUGATE_TOL

    @classmethod
    def parse(cls, text: str) -> "Exponent":
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo"):
            return cls(math.inf)
        try:
            return cls(float(t))
        except ValueError as exc:
            raise ValueError(f"cannot parse exponent from {text!r}") from exc

    def __str__(self) -> str:
        if self.is_inf:
            return "inf"
        if self.value == int(self.value):
            return str(int(self.value))
        return repr(self.value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Exponent):
            return self.value == other.value
        if isinstance(other, (int, float)):
            return self.value == float(other)
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        if isinstance(other, Exponent):
            return self.value < other.value
        if isinstance(other, (int, float)):
            return self.value < float(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)


ONE = Exponent(1.0)
TWO = Exponent(2.0)
INF = Exponent(math.inf)


def gap_exponent(p: Exponent, r: Exponent) -> Exponent:
    """The index v with 1/v = 1/p - 1/r, defined for r > p."""
    if not r > p:
        raise ValueError(f"gap exponent needs r > p, got r={r}, p={p}")
    inv = (1.0 / p.value) - (0.0 if r.is_inf else 1.0 / r.value)
    return Exponent(1.0 / inv)
