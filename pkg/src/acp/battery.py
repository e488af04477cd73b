"""The versioned battery of named functions used by the property suites.

Each entry is an expression in the package grammar plus purpose tags:

* ``aid``:    members whose derivative vanishes at 0 fast enough (order
              a >= 0.4, or identically zero near 0) for the approximate-
              identity defect to drop below 1e-3 * |||g||| at alpha = 2^-20
              for every p in {1, 1.5, 2, 4}.
* ``ac_inf``: members with bounded derivative (the p = inf algebra).
* ``hardy``:  derivative-level inputs g' for the averaging-operator ratio.
* ``mult``:   candidate multipliers m (bounded, unbounded, log-type,
              discontinuous, degenerate) spanning all verdict routes.
* ``fit``:    m with pure-power derivative for tight slope-fit validation.

Membership at a given exponent is always re-checked at use sites; tags only
express intent.  The list is versioned: tests freeze against BATTERY_VERSION.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import membership
from .exponents import Exponent
from .expr import parse
from .funcspace import PiecewiseFunction, PowLogTerm, TermSum

__all__ = [
    "BATTERY_VERSION",
    "BatteryEntry",
    "BATTERY",
    "battery_functions",
    "battery_members",
    "tagged",
    "random_power_log",
]

BATTERY_VERSION = 1


@dataclass(frozen=True)
class BatteryEntry:
    name: str
    expression: str
    tags: frozenset[str]

    @property
    def function(self) -> PiecewiseFunction:
        return _parse_cached(self.expression)


@lru_cache(maxsize=None)
def _parse_cached(expression: str) -> PiecewiseFunction:
    return parse(expression)


def _entry(name: str, expression: str, *tags: str) -> BatteryEntry:
    return BatteryEntry(name, expression, frozenset(tags))


BATTERY: tuple[BatteryEntry, ...] = (
    _entry("zero", "0", "ac_inf", "mult"),
    _entry("identity", "t", "ac_inf", "mult", "fit"),
    _entry("square", "t^2", "ac_inf", "aid", "mult"),
    _entry("three_halves", "t^1.5", "ac_inf", "aid"),
    _entry("three_halves_log", "t^1.5*L^-1", "ac_inf", "aid"),
    _entry("square_log", "t^2*L", "ac_inf", "aid"),
    _entry("ramp_quarter", "ealpha(0.25)", "ac_inf"),
    _entry("ramp_half", "ealpha(0.5)", "ac_inf"),
    _entry("plateau", "piece[0,0.25]: 0; [0.25,1]: t - 0.25", "ac_inf", "aid", "mult"),
    _entry("hump", "t - t^2", "ac_inf"),
    _entry("wiggle", "2*t - 3*t^1.5 + t^2", "ac_inf"),
    _entry("two_piece_smooth", "piece[0,0.5]: t^2; [0.5,1]: t - 0.25", "ac_inf", "aid"),
    _entry("power_three_quarters", "t^0.75"),
    _entry("power_log_member", "t^0.875*L^-1"),
    _entry("log_blow", "t*L"),
    _entry("hardy_const", "1", "hardy"),
    _entry("hardy_mild_power", "t^-0.125", "hardy"),
    _entry("hardy_power_log", "t^-0.2*L^-1", "hardy"),
    _entry("hardy_sign_change", "1 - 2*t", "hardy"),
    _entry("hardy_smooth", "t^0.5", "hardy"),
    _entry("hardy_quarter", "t^-0.25", "hardy"),
    _entry("m_const_one", "1", "mult"),
    _entry("m_unbounded_mild", "t^-0.15", "mult", "fit"),
    _entry("m_unbounded_quarter", "t^-0.25", "mult", "fit"),
    _entry("m_steep", "t^-0.5", "mult", "fit"),
    _entry("m_log_recip", "L^-1", "mult"),
    _entry("m_jump", "piece[0,0.5]: t; [0.5,1]: t + 0.5", "mult"),
    _entry("m_power_log", "t^0.3*L^2", "mult"),
)


def tagged(tag: str) -> tuple[BatteryEntry, ...]:
    return tuple(e for e in BATTERY if tag in e.tags)


def battery_functions(tag: str | None = None) -> tuple[tuple[str, PiecewiseFunction], ...]:
    entries = BATTERY if tag is None else tagged(tag)
    return tuple((e.name, e.function) for e in entries)


def battery_members(p: Exponent, tag: str | None = None) -> tuple[tuple[str, PiecewiseFunction], ...]:
    """Battery entries that are algebra members at p."""
    return tuple(
        (name, f) for name, f in battery_functions(tag) if membership(f, p).is_member
    )


def random_power_log(
    rng: np.random.Generator,
    p_value: float,
    *,
    max_terms: int = 3,
    margin: float = 0.1,
) -> PiecewiseFunction:
    """A seeded random single-piece term sum, kept away from razor edges.

    The dominant power stays clear of the integrability boundary
    a * p = -1 by `margin`; later terms trail by a power gap of at least 0.8
    (enough to beat any admissible log-factor gap by t = 2^-40) or by a pure
    log gap of at least 1.5 at the same power; coefficient magnitudes live in
    [0.5, 2].  Brute-force dyadic integration then observes clear geometric
    decay or growth, and the dominant term visibly wins by t = 2^-40.
    """
    while True:
        a0 = float(rng.uniform(-1.5 / p_value, 1.0))
        if abs(a0 * p_value + 1.0) >= margin:
            break
    b0 = float(rng.uniform(-2.5, 2.5))
    coeff = float(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]))
    terms = [PowLogTerm(coeff, a0, b0)]
    a_prev, b_prev = a0, b0
    for _ in range(int(rng.integers(0, max_terms))):
        coeff = float(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]))
        if rng.random() < 0.3:
            b_prev = b_prev - float(rng.uniform(1.5, 3.0))
        else:
            a_prev = a_prev + float(rng.uniform(0.8, 2.0))
            b_prev = float(rng.uniform(-2.5, 2.5))
        terms.append(PowLogTerm(coeff, a_prev, b_prev))
    return PiecewiseFunction.from_termsum(TermSum(tuple(terms)))
