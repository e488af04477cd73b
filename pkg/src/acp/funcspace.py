"""Piecewise power-log functions on (0, 1] and their exact calculus.

The working class is finite sums of terms c * t**a * (1 - ln t)**b attached
to a breakpoint partition 0 = x0 < x1 < ... < xk = 1, each sum living on the
half-open piece (x_{i-1}, x_i].  On (0, 1] we have 1 - ln t >= 1, so terms
are well-defined for arbitrary real exponents.  The class is closed under
differentiation and products:

    d/dt [t^a (1-ln t)^b] = a t^{a-1} (1-ln t)^b - b t^{a-1} (1-ln t)^{b-1}

and termwise products add exponents.  Every asymptotic question at 0+
(limits, L^p integrability, growth orders) reduces to the dominant term of
the first piece, which normalization keeps in front.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .exponents import Exponent

__all__ = [
    "EXPONENT_TOL",
    "COEFF_DROP_TOL",
    "CONTINUITY_TOL",
    "MIN_INTERIOR_BREAKPOINT",
    "PowLogTerm",
    "TermSum",
    "AsymptoticOrder",
    "ZERO_ORDER",
    "PiecewiseFunction",
    "LpVerdict",
    "DomainError",
    "differentiate",
    "multiply",
    "evaluate",
    "dominant_order",
    "classify_lp_at_zero",
    "classify_order",
    "limit_from_order",
]

# Exponents produced by conjugate-index arithmetic (1/p - 1/r etc.) carry
# float noise; terms whose (a, b) agree within this tolerance are merged.
EXPONENT_TOL = 1e-12
# Coefficients that cancel to below this magnitude are dropped.
COEFF_DROP_TOL = 1e-14
# Absolute tolerance for left/right values at interior breakpoints.
CONTINUITY_TOL = 1e-10
# Interior breakpoints must stay above the quadrature mesh floor (2^-60)
# with margin, so tail asymptotics always live in the first piece.
MIN_INTERIOR_BREAKPOINT = 2.0**-40


class DomainError(ValueError):
    """Raised for arguments outside (0, 1] or malformed partitions."""


@dataclass(frozen=True)
class PowLogTerm:
    """One term c * t**a * (1 - ln t)**b."""

    coeff: float
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self) -> None:
        for name in ("coeff", "a", "b"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"non-finite {name} in term: {v!r}")
            object.__setattr__(self, name, v)

    def derivative_terms(self) -> tuple["PowLogTerm", ...]:
        out = []
        if self.a != 0.0:
            out.append(PowLogTerm(self.coeff * self.a, self.a - 1.0, self.b))
        if self.b != 0.0:
            out.append(PowLogTerm(-self.coeff * self.b, self.a - 1.0, self.b - 1.0))
        return tuple(out)

    def __mul__(self, other: "PowLogTerm") -> "PowLogTerm":
        return PowLogTerm(self.coeff * other.coeff, self.a + other.a, self.b + other.b)


def _normalize(terms: Iterable[PowLogTerm]) -> tuple[PowLogTerm, ...]:
    """Sort dominant-first, merge equal exponent pairs, drop zero coefficients."""
    alive = [t for t in terms if t.coeff != 0.0]
    alive.sort(key=lambda t: (t.a, -t.b))
    merged: list[PowLogTerm] = []
    for t in alive:
        if merged and abs(t.a - merged[-1].a) <= EXPONENT_TOL and abs(t.b - merged[-1].b) <= EXPONENT_TOL:
            prev = merged[-1]
            merged[-1] = PowLogTerm(prev.coeff + t.coeff, prev.a, prev.b)
        else:
            merged.append(t)
    return tuple(t for t in merged if abs(t.coeff) > COEFF_DROP_TOL)


@dataclass(frozen=True)
class TermSum:
    """A normalized finite sum of PowLogTerm, dominant term first."""

    terms: tuple[PowLogTerm, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _normalize(self.terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def dominant(self) -> PowLogTerm | None:
        return self.terms[0] if self.terms else None

    def _arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (
            np.array([t.coeff for t in self.terms], dtype=np.float64),
            np.array([t.a for t in self.terms], dtype=np.float64),
            np.array([t.b for t in self.terms], dtype=np.float64),
        )

    def evaluate_many(self, ts: np.ndarray) -> np.ndarray:
        ts = np.ascontiguousarray(ts, dtype=np.float64)
        if self.is_zero:
            return np.zeros_like(ts)
        c, a, b = self._arrays()
        return np.asarray(kernels.eval_termsum(c, a, b, ts))

    def evaluate(self, t: float) -> float:
        return float(self.evaluate_many(np.array([t]))[0])

    def weighted_abs_pow_sum(self, ts: np.ndarray, ws: np.ndarray, p: float) -> float:
        if self.is_zero:
            return 0.0
        c, a, b = self._arrays()
        return float(
            kernels.weighted_abs_pow_sum(
                c, a, b, np.ascontiguousarray(ts, dtype=np.float64),
                np.ascontiguousarray(ws, dtype=np.float64), float(p),
            )
        )

    def derivative(self) -> "TermSum":
        out: list[PowLogTerm] = []
        for t in self.terms:
            out.extend(t.derivative_terms())
        return TermSum(tuple(out))

    def __add__(self, other: "TermSum") -> "TermSum":
        return TermSum(self.terms + other.terms)

    def __neg__(self) -> "TermSum":
        return TermSum(tuple(PowLogTerm(-t.coeff, t.a, t.b) for t in self.terms))

    def __mul__(self, other: "TermSum") -> "TermSum":
        return TermSum(tuple(s * o for s in self.terms for o in other.terms))

    def scaled(self, c: float) -> "TermSum":
        return TermSum(tuple(PowLogTerm(c * t.coeff, t.a, t.b) for t in self.terms))


@dataclass(frozen=True)
class AsymptoticOrder:
    """Dominant behavior coeff * t**a * (1 - ln t)**b as t -> 0+."""

    a: float
    b: float
    coeff: float

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0.0

    def combine(self, other: "AsymptoticOrder") -> "AsymptoticOrder":
        """Order of the pointwise product."""
        if self.is_zero or other.is_zero:
            return ZERO_ORDER
        return AsymptoticOrder(self.a + other.a, self.b + other.b, self.coeff * other.coeff)

    def evaluate(self, t: float) -> float:
        if self.is_zero:
            return 0.0
        return self.coeff * t**self.a * (1.0 - math.log(t)) ** self.b


ZERO_ORDER = AsymptoticOrder(a=math.inf, b=0.0, coeff=0.0)


def limit_from_order(order: AsymptoticOrder) -> float:
    """Limit at 0+ implied by a dominant order (may be +-inf)."""
    if order.is_zero or order.a > EXPONENT_TOL:
        return 0.0
    if order.a < -EXPONENT_TOL:
        return math.copysign(math.inf, order.coeff)
    if order.b > EXPONENT_TOL:
        return math.copysign(math.inf, order.coeff)
    if order.b < -EXPONENT_TOL:
        return 0.0
    return order.coeff


@dataclass(frozen=True)
class LpVerdict:
    """Convergent/Divergent verdict for the L^p mass of |f|^p near 0."""

    convergent: bool
    order: AsymptoticOrder
    p: Exponent
    reason: str

    @property
    def divergent(self) -> bool:
        return not self.convergent


def classify_order(order: AsymptoticOrder, p: Exponent) -> LpVerdict:
    """Convergence of the |.|^p mass near 0 for a bare dominant order."""
    return _classify_order(order, p)


def _classify_order(order: AsymptoticOrder, p: Exponent) -> LpVerdict:
    if order.is_zero:
        return LpVerdict(True, order, p, "zero function")
    if p.is_inf:
        if order.a > EXPONENT_TOL:
            return LpVerdict(True, order, p, "t^a -> 0 with a > 0")
        if abs(order.a) <= EXPONENT_TOL and order.b <= EXPONENT_TOL:
            return LpVerdict(True, order, p, "bounded: a = 0, b <= 0")
        return LpVerdict(False, order, p, "unbounded near 0")
    ap1 = order.a * p.value + 1.0
    bp = order.b * p.value
    if ap1 > EXPONENT_TOL:
        return LpVerdict(True, order, p, "a*p + 1 > 0")
    if abs(ap1) <= EXPONENT_TOL:
        if bp < -1.0 - EXPONENT_TOL:
            return LpVerdict(True, order, p, "a*p = -1 with b*p < -1")
        return LpVerdict(False, order, p, "a*p = -1 with b*p >= -1")
    return LpVerdict(False, order, p, "a*p + 1 < 0")


class PiecewiseFunction:
    """A function on (0, 1] given by a TermSum per half-open piece.

    Values are immutable after construction; all operations return fresh
    objects, so instances are safe to share across threads.
    """

    __slots__ = ("breakpoints", "pieces", "_limit")

    def __init__(self, breakpoints: Sequence[float], pieces: Sequence[TermSum]):
        bps = tuple(float(x) for x in breakpoints)
        pcs = tuple(pieces)
        if len(bps) < 2 or len(pcs) != len(bps) - 1:
            raise DomainError("need k+1 breakpoints for k pieces")
        if bps[0] != 0.0 or bps[-1] != 1.0:
            raise DomainError("breakpoints must start at 0 and end at 1")
        for lo, hi in zip(bps, bps[1:]):
            if not hi > lo:
                raise DomainError("breakpoints must increase strictly")
        for x in bps[1:-1]:
            if x < MIN_INTERIOR_BREAKPOINT:
                raise DomainError(
                    f"interior breakpoints below {MIN_INTERIOR_BREAKPOINT:.3e} are not supported"
                )
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pcs)
        object.__setattr__(self, "_limit", limit_from_order(self._first_order()))

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("PiecewiseFunction is immutable")

    # ----------------------------------------------------------- constructors

    @classmethod
    def from_termsum(cls, ts: TermSum) -> "PiecewiseFunction":
        return cls((0.0, 1.0), (ts,))

    @classmethod
    def constant(cls, c: float) -> "PiecewiseFunction":
        return cls.from_termsum(TermSum((PowLogTerm(c),)))

    @classmethod
    def identity(cls) -> "PiecewiseFunction":
        return cls.from_termsum(TermSum((PowLogTerm(1.0, 1.0),)))

    @classmethod
    def zero(cls) -> "PiecewiseFunction":
        return cls.from_termsum(TermSum())

    @classmethod
    def single_term(cls, coeff: float, a: float = 0.0, b: float = 0.0) -> "PiecewiseFunction":
        return cls.from_termsum(TermSum((PowLogTerm(coeff, a, b),)))

    # ----------------------------------------------------------- basic queries

    def _first_order(self) -> AsymptoticOrder:
        dom = self.pieces[0].dominant()
        if dom is None:
            return ZERO_ORDER
        return AsymptoticOrder(dom.a, dom.b, dom.coeff)

    @property
    def limit_at_zero(self) -> float:
        return self._limit

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.pieces)

    def piece_index(self, t: float) -> int:
        """Index of the piece whose half-open interval contains t."""
        if not 0.0 < t <= 1.0:
            raise DomainError(f"t = {t!r} outside (0, 1]")
        return bisect.bisect_left(self.breakpoints, t) - 1

    def evaluate(self, t: float) -> float:
        return self.pieces[self.piece_index(t)].evaluate(t)

    def evaluate_many(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=np.float64)
        if ts.size and (ts.min() <= 0.0 or ts.max() > 1.0):
            raise DomainError("points must lie in (0, 1]")
        out = np.empty_like(ts)
        idx = np.searchsorted(np.asarray(self.breakpoints), ts, side="left") - 1
        for i, piece in enumerate(self.pieces):
            mask = idx == i
            if mask.any():
                out[mask] = piece.evaluate_many(ts[mask])
        return out

    def __call__(self, t):
        if np.ndim(t) == 0:
            return self.evaluate(float(t))
        return self.evaluate_many(np.asarray(t))

    # ----------------------------------------------------------- calculus

    def derivative(self) -> "PiecewiseFunction":
        return PiecewiseFunction(self.breakpoints, tuple(p.derivative() for p in self.pieces))

    def _combine(self, other: "PiecewiseFunction", op) -> "PiecewiseFunction":
        xs = sorted(set(self.breakpoints) | set(other.breakpoints))
        merged = [xs[0]]
        for x in xs[1:]:
            if x - merged[-1] > EXPONENT_TOL:
                merged.append(x)
        merged[-1] = 1.0
        pieces = []
        for lo, hi in zip(merged, merged[1:]):
            mid = hi  # pieces are (lo, hi], so hi identifies the covering piece
            pieces.append(op(self.pieces[self.piece_index(mid)], other.pieces[other.piece_index(mid)]))
        return PiecewiseFunction(tuple(merged), tuple(pieces))

    def __mul__(self, other):
        if isinstance(other, PiecewiseFunction):
            return self._combine(other, lambda a, b: a * b)
        if isinstance(other, (int, float)):
            return PiecewiseFunction(self.breakpoints, tuple(p.scaled(float(other)) for p in self.pieces))
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, PiecewiseFunction):
            return self._combine(other, lambda a, b: a + b)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, PiecewiseFunction):
            return self + (-other)
        return NotImplemented

    def __neg__(self) -> "PiecewiseFunction":
        return PiecewiseFunction(self.breakpoints, tuple(-p for p in self.pieces))

    # ----------------------------------------------------------- structure

    def dominant_order(self) -> AsymptoticOrder:
        return self._first_order()

    def continuity_gaps(self) -> tuple[tuple[float, float, float, float], ...]:
        """(x, value_from_left_piece, limit_from_right_piece, |gap|) per interior breakpoint.

        The left piece owns the value at x; the right piece's term sum
        extends continuously to x, giving the right limit.
        """
        rows = []
        for i, x in enumerate(self.breakpoints[1:-1], start=0):
            left = self.pieces[i].evaluate(x)
            right = self.pieces[i + 1].evaluate(x)
            rows.append((x, left, right, abs(left - right)))
        return tuple(rows)

    def is_continuous(self, tol: float = CONTINUITY_TOL) -> bool:
        return all(gap <= tol for _, _, _, gap in self.continuity_gaps())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewiseFunction):
            return NotImplemented
        return self.breakpoints == other.breakpoints and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash((self.breakpoints, self.pieces))

    def __str__(self) -> str:
        from .expr import format_function

        return format_function(self)

    def __repr__(self) -> str:
        return f"PiecewiseFunction({self!s})"


# --------------------------------------------------------------- module-level ops


def differentiate(f: PiecewiseFunction) -> PiecewiseFunction:
    """Piecewise derivative on piece interiors; breakpoints preserved."""
    return f.derivative()


def multiply(f: PiecewiseFunction, g: PiecewiseFunction) -> PiecewiseFunction:
    """Pointwise product on the refined breakpoint union."""
    return f * g


def evaluate(f: PiecewiseFunction, t: float) -> float:
    """Value at t in (0, 1]."""
    return f.evaluate(t)


def dominant_order(f: PiecewiseFunction) -> AsymptoticOrder:
    """Dominant (a, b, coeff) of the first piece; ZERO_ORDER for the zero function."""
    return f.dominant_order()


def classify_lp_at_zero(f: PiecewiseFunction, p: Exponent) -> LpVerdict:
    """Decide convergence of the integral of |f|^p near 0 (boundedness for p = inf).

    The dominant term of the first piece is authoritative: the integral of
    t^(ap) (1-ln t)^(bp) near 0 converges iff ap > -1, or ap = -1 with
    bp < -1 (substitute u = 1 - ln t).
    """
    return _classify_order(f.dominant_order(), p)
