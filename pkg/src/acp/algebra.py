"""The Banach-algebra layer over the function class.

Membership in the algebra (continuity on [0, 1], value 0 at 0, derivative in
L^p), the norm |||f||| = ||f'||_p, the pointwise bound |g(t)| <= |||g||| t^(1/p'),
submultiplicativity with constant 2, the ramp approximate identity e_alpha
with its defect bound, the sup-norm obstruction that kills approximate
identities at p = inf, and the inclusion between exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .expr import ealpha
from .exponents import Exponent, INF
from .funcspace import (
    CONTINUITY_TOL,
    DomainError,
    PiecewiseFunction,
    classify_lp_at_zero,
)
from .quadrature import lp_norm_full, lp_norm_zero_to

__all__ = [
    "MembershipReport",
    "AidReport",
    "MembershipError",
    "membership",
    "banach_norm",
    "eq1_check",
    "product_norm_check",
    "approximate_identity",
    "aid_defect",
    "no_aid_witness",
    "inclusion_check",
]

EQ1_SLACK = 1e-9


@dataclass(frozen=True)
class MembershipReport:
    """Decomposed membership test; is_member is the conjunction of the flags."""

    is_member: bool
    limit_at_zero_ok: bool
    continuity_ok: bool
    derivative_in_lp: bool
    norm: float
    p: Exponent

    def to_dict(self) -> dict:
        return {
            "is_member": self.is_member,
            "limit_at_zero_ok": self.limit_at_zero_ok,
            "continuity_ok": self.continuity_ok,
            "derivative_in_lp": self.derivative_in_lp,
            "norm": self.norm,
            "p": str(self.p),
        }


class MembershipError(ValueError):
    """An operation required membership that does not hold."""

    def __init__(self, message: str, report: MembershipReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class AidReport:
    """Approximate-identity defect |||e_alpha g - g||| and its proven bound."""

    alpha: float
    defect: float
    bound: float

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "defect": self.defect, "bound": self.bound}


def membership(f: PiecewiseFunction, p: Exponent) -> MembershipReport:
    """Test f in the algebra at exponent p.

    Continuity on [0, 1] at interior breakpoints plus an integrable
    derivative already give absolute continuity (the function is smooth on
    each piece), so membership reduces to the three flags; the limit at 0
    must equal 0 exactly, which the dominant order decides.
    """
    limit_ok = f.limit_at_zero == 0.0
    continuity_ok = f.is_continuous(CONTINUITY_TOL)
    fprime = f.derivative()
    # f' in L^p near 0 already forces f' in L^1 there (for p = inf the
    # bounded dominant order has a >= 0), so no separate integrability flag.
    deriv_ok = classify_lp_at_zero(fprime, p).convergent
    is_member = limit_ok and continuity_ok and deriv_ok
    norm = lp_norm_full(fprime, p).value if is_member else math.inf
    return MembershipReport(is_member, limit_ok, continuity_ok, deriv_ok, norm, p)


def banach_norm(f: PiecewiseFunction, p: Exponent) -> float:
    """|||f||| = ||f'||_p; raises MembershipError outside the algebra."""
    report = membership(f, p)
    if not report.is_member:
        raise MembershipError(f"function is not a member at p = {p}", report)
    return report.norm


def eq1_check(g: PiecewiseFunction, p: Exponent, samples: int = 41) -> bool:
    """Pointwise growth bound from the norm, on the geometric grid t = 2^-j.

    |g(t)| <= |||g||| * t^(1/p') for 1 < p < inf; |g(t)| <= |||g||| for p = 1;
    |g(t)| <= |||g||| * t for p = inf.  Checked with absolute slack 1e-9.
    """
    norm = banach_norm(g, p)
    inv_conj = 0.0 if math.isinf(p.conjugate) else 1.0 / p.conjugate
    for j in range(samples):
        t = 2.0**-j
        bound = norm * t**inv_conj
        if abs(g.evaluate(t)) > bound + EQ1_SLACK:
            return False
    return True


def product_norm_check(
    f: PiecewiseFunction, g: PiecewiseFunction, p: Exponent
) -> tuple[float, float]:
    """(|||fg|||, 2 |||f||| |||g|||); the algebra contract is lhs <= rhs + 1e-8."""
    nf = banach_norm(f, p)
    ng = banach_norm(g, p)
    lhs = banach_norm(f * g, p)
    return lhs, 2.0 * nf * ng


def approximate_identity(alpha: float) -> PiecewiseFunction:
    """The ramp e_alpha(t) = min(t/alpha, 1) for 0 < alpha <= 1."""
    return ealpha(alpha)


def aid_defect(g: PiecewiseFunction, p: Exponent, alpha: float) -> AidReport:
    """Defect |||e_alpha g - g||| and the bound (p^(-1/p) + 1) ||g' chi_[0,alpha]||_p.

    Both sides are computed: the defect from the exact derivative
    (e_alpha - 1) g' + e'_alpha g of the class member e_alpha g - g, the
    bound from the norm of g' restricted to (0, alpha].
    """
    if p.is_inf:
        raise DomainError("the defect bound holds for 1 <= p < inf only")
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    report = membership(g, p)
    if not report.is_member:
        raise MembershipError(f"g is not a member at p = {p}", report)
    e = approximate_identity(alpha)
    defect = lp_norm_full((e * g - g).derivative(), p).value
    gnorm_head = lp_norm_zero_to(g.derivative(), p, alpha).value
    bound = (p.value ** (-1.0 / p.value) + 1.0) * gnorm_head
    return AidReport(alpha, defect, bound)


def no_aid_witness(g: PiecewiseFunction) -> float:
    """||t g' + g - 1||_inf, which is >= 1 for every member at p = inf.

    This is |||t g - t||| in the sup-derivative norm: multiplying by the
    would-be identity cannot move t g closer to t, because the derivative
    defect tends to -1 at 0.
    """
    report = membership(g, INF)
    if not report.is_member:
        raise MembershipError("g is not a member at p = inf", report)
    t = PiecewiseFunction.identity()
    return lp_norm_full((t * g - t).derivative(), INF).value


def inclusion_check(f: PiecewiseFunction, r: Exponent, p: Exponent) -> bool:
    """Membership at the larger exponent r must imply membership at p < r."""
    if not r > p:
        raise DomainError(f"inclusion check needs r > p, got r={r}, p={p}")
    member_r = membership(f, r).is_member
    member_p = membership(f, p).is_member
    return (not member_r) or member_p
