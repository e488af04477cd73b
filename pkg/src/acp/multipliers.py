"""Multiplier decision engine between algebras at exponents r (source) and p (target).

Pointwise multiplication by a continuous m on (0, 1] is tested with:

* r = p: the definitive criterion (bounded continuous m, locally absolutely
  continuous, with tail norms ||m' chi_[eps,1]||_p = O(eps^(-1/p'))).
* r < p: only m = 0 works.
* r > p: a necessary growth test with exponent 1/r', a sufficient test
  (m in L^v, 1/v = 1/p - 1/r, plus a weighted dyadic block sum), and a
  falsification step that multiplies m against concrete witness functions
  and classifies the product's derivative.

Analytic dominant-order decisions are authoritative; every empirical number
(log-log slope fits, partial sums, block-mass ratios) is attached to the
evidence trail as a cross-check, never as the decision maker.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exponents import Exponent, gap_exponent
from .funcspace import (
    EXPONENT_TOL,
    AsymptoticOrder,
    DomainError,
    PiecewiseFunction,
    PowLogTerm,
    TermSum,
    classify_lp_at_zero,
    classify_order,
    limit_from_order,
)
from .quadrature import (
    MESH_FLOOR,
    lp_norm_full,
    lp_norm_on,
    leading_antiderivative,
    sup_abs_on,
    cumulative_integral,
    _gauss_nodes,
    _G16,
)

__all__ = [
    "Verdict",
    "Route",
    "DirectOutcome",
    "Condition",
    "DyadicProfile",
    "GrowthFit",
    "MultiplierVerdict",
    "NecessaryReport",
    "SufficientReport",
    "IffReport",
    "DirectCheckReport",
    "OperatorNormBounds",
    "NotMultiplierError",
    "dyadic_profile",
    "profile_of_derivative",
    "growth_fit",
    "necessary_check",
    "sufficient_check",
    "iff_check_p_equals_r",
    "direct_check",
    "verdict",
    "operator_norm_bounds",
    "tail_growth_bounded",
    "weighted_terms_bounded",
    "spec_witness",
    "sharp_witness",
]

DEFAULT_DEPTH = 40
FIT_WINDOW = (5, 40)


class Verdict(str, Enum):
    MULTIPLIER = "Multiplier"
    NOT_MULTIPLIER = "NotMultiplier"
    INCONCLUSIVE = "Inconclusive"


class Route(str, Enum):
    IFF_R_EQ_P = "ThmIff_r_eq_p"
    R_LT_P = "Thm4_r_lt_p"
    NECESSARY_FAILED = "Thm5_necessary_failed"
    SUFFICIENT_PASSED = "Thm6_sufficient_passed"
    DIRECT_COUNTEREXAMPLE = "DirectCounterexample"
    UNDETERMINED = "Undetermined"


class DirectOutcome(str, Enum):
    MEMBER = "Member"
    NOT_MEMBER = "NotMember"
    NUMERIC_INCONCLUSIVE = "Numeric-inconclusive"


class NotMultiplierError(ValueError):
    """Raised when an operation requires a multiplier and the input is not one."""


@dataclass(frozen=True)
class Condition:
    """One named test with its analytic and empirical readings."""

    name: str
    passed: bool
    analytic: float | str | None = None
    empirical: float | str | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "analytic": self.analytic,
            "empirical": self.empirical,
        }


@dataclass(frozen=True)
class DyadicProfile:
    """||P_n m'||_p over blocks (2^-n, 2^-n+1] with weights 2^(-n/r')."""

    p: Exponent
    r: Exponent
    depth: int
    block_norms: tuple[float, ...]
    weighted: tuple[float, ...]

    def weighted_powers(self) -> tuple[float, ...]:
        if self.p.is_inf:
            return self.weighted
        return tuple(w**self.p.value for w in self.weighted)

    def partial_sums(self) -> tuple[float, ...]:
        return tuple(float(s) for s in np.cumsum(self.weighted_powers()))

    def to_dict(self) -> dict:
        return {
            "p": str(self.p),
            "r": str(self.r),
            "depth": self.depth,
            "block_norms": list(self.block_norms),
            "weighted": list(self.weighted),
            "partial_sums": list(self.partial_sums()),
        }


@dataclass(frozen=True)
class GrowthFit:
    """Least-squares slope of log ||m' chi_[eps,1]||_p against -log eps."""

    slope: float
    analytic_slope: float
    window: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "analytic_slope": self.analytic_slope,
            "window": list(self.window),
        }


@dataclass(frozen=True)
class NecessaryReport:
    passed: bool
    fit: GrowthFit
    conditions: tuple[Condition, ...]


@dataclass(frozen=True)
class SufficientReport:
    passed: bool
    conditions: tuple[Condition, ...]
    profile: DyadicProfile


@dataclass(frozen=True)
class IffReport:
    is_multiplier: bool
    conditions: tuple[Condition, ...]


@dataclass(frozen=True)
class DirectCheckReport:
    outcome: DirectOutcome
    conditions: tuple[Condition, ...]
    notes: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "conditions": [c.to_dict() for c in self.conditions],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class MultiplierVerdict:
    verdict: Verdict
    route: Route
    conditions: tuple[Condition, ...]
    notes: tuple[str, ...]
    p: Exponent
    r: Exponent

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "route": self.route.value,
            "p": str(self.p),
            "r": str(self.r),
            "conditions": [c.to_dict() for c in self.conditions],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class OperatorNormBounds:
    lower: float
    upper: float
    growth_constant: float
    sup_m: float

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "growth_constant": self.growth_constant,
            "sup_m": self.sup_m,
        }


# ------------------------------------------------------------------ profiles


def dyadic_profile(
    m: PiecewiseFunction, p: Exponent, r: Exponent, depth: int = DEFAULT_DEPTH
) -> DyadicProfile:
    """Block norms ||m' chi_(2^-n, 2^-n+1]||_p and their 2^(-n/r') weighting."""
    return profile_of_derivative(m.derivative(), p, r, depth)


def profile_of_derivative(
    mprime: PiecewiseFunction, p: Exponent, r: Exponent, depth: int = DEFAULT_DEPTH
) -> DyadicProfile:
    """Same as dyadic_profile but with the derivative supplied directly."""
    if depth < 1:
        raise DomainError("depth must be at least 1")
    inv_rp = 0.0 if math.isinf(r.conjugate) else 1.0 / r.conjugate
    norms = []
    weighted = []
    for n in range(1, depth + 1):
        lo, hi = 2.0**-n, 2.0 ** (-n + 1)
        value = lp_norm_on(mprime, p, lo, hi).value
        norms.append(value)
        weighted.append(2.0 ** (-n * inv_rp) * value)
    return DyadicProfile(p, r, depth, tuple(norms), tuple(weighted))


# ------------------------------------------------------------------ growth analytics


@dataclass(frozen=True)
class _GrowthProfile:
    """Shape of eps -> ||m' chi_[eps,1]||_p: C * eps^(-power) * (log factor)."""

    bounded: bool
    power: float
    log_exponent: float
    log_divergent: bool  # power 0 but unbounded through log factors alone
    reason: str


def _growth_profile(mprime: PiecewiseFunction, p: Exponent) -> _GrowthProfile:
    verdict = classify_lp_at_zero(mprime, p)
    if verdict.convergent:
        return _GrowthProfile(True, 0.0, 0.0, False, "tail norms bounded: " + verdict.reason)
    order = verdict.order
    if p.is_inf:
        if order.a < -EXPONENT_TOL:
            return _GrowthProfile(False, -order.a, order.b, False, "sup grows like a power")
        return _GrowthProfile(False, 0.0, order.b, True, "sup grows through logs only")
    ap1 = order.a * p.value + 1.0
    if ap1 < -EXPONENT_TOL:
        return _GrowthProfile(False, -ap1 / p.value, order.b, False, "power-law tail growth")
    return _GrowthProfile(False, 0.0, 0.0, True, "logarithmic tail growth")


def _growth_pass(profile: _GrowthProfile, inv_rprime: float) -> bool:
    """Is the tail-norm growth O(eps^(-inv_rprime))?"""
    if profile.bounded:
        return True
    if profile.power < inv_rprime - EXPONENT_TOL:
        return True
    if abs(profile.power - inv_rprime) <= EXPONENT_TOL:
        return (not profile.log_divergent) and profile.log_exponent <= EXPONENT_TOL
    return False


def growth_fit(
    mprime: PiecewiseFunction,
    p: Exponent,
    window: tuple[int, int] = FIT_WINDOW,
) -> GrowthFit:
    """Empirical tail-norm growth exponent: log-log fit of ||m' chi_[eps,1]||_p.

    The fitted slope validates the analytic dominant-order slope; it never
    decides anything by itself.
    """
    jlo, jhi = window
    eps = 2.0 ** (-np.arange(jlo, jhi + 1, dtype=float))
    vals = np.array([lp_norm_on(mprime, p, e, 1.0).value for e in eps])
    mask = vals > 0.0
    if mask.sum() >= 2:
        slope = -float(np.polyfit(np.log(eps[mask]), np.log(vals[mask]), 1)[0])
    else:
        slope = 0.0
    analytic = _growth_profile(mprime, p).power
    return GrowthFit(slope, analytic, (float(eps[-1]), float(eps[0])))


def tail_growth_bounded(m: PiecewiseFunction, p: Exponent, r: Exponent) -> bool:
    """Analytic reading of ||m' chi_[eps,1]||_p = O(eps^(-1/r'))."""
    inv_rp = 0.0 if math.isinf(r.conjugate) else 1.0 / r.conjugate
    return _growth_pass(_growth_profile(m.derivative(), p), inv_rp)


def weighted_terms_bounded(profile: DyadicProfile) -> bool:
    """Empirical reading of sup_n 2^(-n/r') ||P_n m'||_p < inf.

    Threshold rule: no weighted term may exceed 10x the median of the last
    ten terms.  An identically-zero tail means the sup is attained among
    finitely many terms, hence bounded.
    """
    w = np.array(profile.weighted)
    tail = w[-10:]
    med = float(np.median(tail))
    if med == 0.0:
        return bool(np.all(tail == 0.0))
    return bool(np.all(w <= 10.0 * med))


def _is_bounded_near_zero(m: PiecewiseFunction) -> bool:
    order = m.dominant_order()
    if order.is_zero or order.a > EXPONENT_TOL:
        return True
    return abs(order.a) <= EXPONENT_TOL and order.b <= EXPONENT_TOL


# ------------------------------------------------------------------ criteria


def necessary_check(m: PiecewiseFunction, p: Exponent, r: Exponent) -> NecessaryReport:
    """Conditions every multiplier must satisfy (r >= p).

    Local absolute continuity is continuity at the breakpoints for this
    class; the growth condition compares the dominant-order power of the
    tail norms against 1/r' (for r = p this is the forward half of the
    definitive criterion and additionally requires m bounded).
    """
    if not r >= p:
        raise DomainError(f"necessary_check needs r >= p, got r={r}, p={p}")
    mprime = m.derivative()
    conditions = [
        Condition(
            "m_absolutely_continuous_on_compacta",
            m.is_continuous(),
            analytic="max breakpoint gap",
            empirical=max((g for *_, g in m.continuity_gaps()), default=0.0),
        )
    ]
    if r == p:
        conditions.append(
            Condition("m_bounded_near_zero", _is_bounded_near_zero(m), analytic="dominant order")
        )
    profile = _growth_profile(mprime, p)
    inv_rp = 0.0 if math.isinf(r.conjugate) else 1.0 / r.conjugate
    gpass = _growth_pass(profile, inv_rp)
    fit = growth_fit(mprime, p)
    conditions.append(
        Condition(
            "tail_norm_growth_within_r_conjugate",
            gpass,
            analytic=profile.power,
            empirical=fit.slope,
        )
    )
    return NecessaryReport(all(c.passed for c in conditions), fit, tuple(conditions))


def sufficient_check(
    m: PiecewiseFunction, p: Exponent, r: Exponent, depth: int = DEFAULT_DEPTH
) -> SufficientReport:
    """Sufficient conditions for r > p > 1: m in L^v, continuity, and a
    convergent weighted dyadic block sum sum_n (2^(-n/r') ||P_n m'||_p)^p.

    Convergence of the sum is decided by the closed-form geometric exponent
    gamma = a*p + 1 + p/r' of the weighted terms (dominant order of m'),
    with the boundary gamma = 0 convergent only when b*p < -1; partial sums
    and their ratio over the computed blocks are attached as confirmation.
    """
    if not (r > p and p.value > 1.0):
        raise DomainError(f"sufficient_check needs r > p > 1, got r={r}, p={p}")
    v = gap_exponent(p, r)
    in_lv = classify_lp_at_zero(m, v)
    continuity = m.is_continuous()
    mprime = m.derivative()
    inv_rp = 1.0 / r.conjugate  # r > 1 here, so r' < inf
    order = mprime.dominant_order()
    if order.is_zero or classify_lp_at_zero(mprime, p).convergent:
        gamma = math.inf
        converges = True
    else:
        gamma = order.a * p.value + 1.0 + p.value * inv_rp
        if gamma > EXPONENT_TOL:
            converges = True
        elif abs(gamma) <= EXPONENT_TOL:
            converges = order.b * p.value < -1.0 - EXPONENT_TOL
        else:
            converges = False
    profile = dyadic_profile(m, p, r, depth)
    powers = np.array(profile.weighted_powers())
    nz = powers[-10:][powers[-10:] > 0.0]
    ratio = float(np.exp(np.mean(np.diff(np.log(nz))))) if nz.size >= 2 else 0.0
    conditions = (
        Condition("m_in_L_gap_exponent", in_lv.convergent, analytic=in_lv.reason, empirical=str(v)),
        Condition("m_continuous_on_0_1", continuity),
        Condition(
            "weighted_block_sum_converges",
            converges,
            analytic=gamma,
            empirical=ratio,
        ),
    )
    passed = all(c.passed for c in conditions)
    return SufficientReport(passed, conditions, profile)


def iff_check_p_equals_r(m: PiecewiseFunction, p: Exponent) -> IffReport:
    """The definitive multiplier test within a single algebra (r = p).

    m must be bounded and continuous on (0, 1], absolutely continuous away
    from 0, and the tail norms must grow no faster than eps^(-1/p'); for
    p = 1 the growth condition degenerates to m' in L^1, recovering the
    classical description of multipliers on the p = 1 algebra.
    """
    mprime = m.derivative()
    profile = _growth_profile(mprime, p)
    inv_pp = 0.0 if math.isinf(p.conjugate) else 1.0 / p.conjugate
    conditions = (
        Condition("m_bounded_C_b", _is_bounded_near_zero(m), analytic="dominant order"),
        Condition(
            "m_absolutely_continuous_on_compacta",
            m.is_continuous(),
            empirical=max((g for *_, g in m.continuity_gaps()), default=0.0),
        ),
        Condition(
            "tail_norm_growth_within_p_conjugate",
            _growth_pass(profile, inv_pp),
            analytic=profile.power,
        ),
    )
    return IffReport(all(c.passed for c in conditions), conditions)


# ------------------------------------------------------------------ direct check


def spec_witness(r: Exponent) -> PiecewiseFunction:
    """g' = t^(-1/r) (1 - ln t)^(-2/r): the canonical source witness."""
    return PiecewiseFunction.single_term(1.0, -1.0 / r.value, -2.0 / r.value)


def sharp_witness(p: Exponent, r: Exponent) -> PiecewiseFunction:
    """g' = t^(-1/r) (1 - ln t)^(-1/p): the boundary-log witness.

    Still lies in L^r (since r/p > 1), and pushes |(mg)'|^p to the exact
    logarithmic boundary t^-1 (1-ln t)^-1, so it falsifies whenever the
    leading coefficients do not cancel.
    """
    if not r > p:
        raise DomainError("sharp witness needs r > p")
    return PiecewiseFunction.single_term(1.0, -1.0 / r.value, -1.0 / p.value)


def _dominant_of_pair(
    t1: AsymptoticOrder, t2: AsymptoticOrder
) -> tuple[AsymptoticOrder | None, bool]:
    """Dominant order of a sum of two leading orders; None flags cancellation."""
    if t1.is_zero:
        return t2, False
    if t2.is_zero:
        return t1, False
    if abs(t1.a - t2.a) <= EXPONENT_TOL and abs(t1.b - t2.b) <= EXPONENT_TOL:
        coeff = t1.coeff + t2.coeff
        if abs(coeff) <= 1e-9 * (abs(t1.coeff) + abs(t2.coeff)):
            return None, True
        return AsymptoticOrder(t1.a, t1.b, coeff), False
    if (t1.a, -t1.b) < (t2.a, -t2.b):
        return t1, False
    return t2, False


def _numeric_block_behaviour(
    m: PiecewiseFunction, g_prime: PiecewiseFunction, p: Exponent, depth: int = 28
) -> tuple[str, float, float, tuple[float, ...]]:
    """Dyadic masses of |m'g + mg'|^p with g integrated numerically.

    Returns (behaviour, geometric_slope, power_exponent, masses) where
    behaviour is 'convergent', 'divergent' or 'ambiguous'.  Geometric decay
    or growth is read from log2(mass) per block; near-flat profiles are
    refitted as powers of the block index to separate log-type divergence
    (mass ~ 1/n) from slow convergence (mass ~ n^-q, q > 1).
    """
    ns = np.arange(depth, 0, -1)
    los = 2.0 ** (-ns.astype(float))
    his = 2.0 * los
    nodes, weights = _gauss_nodes(los, his, _G16)
    breaks = np.concatenate([los, [1.0], np.array(m.breakpoints[1:-1]), np.array(g_prime.breakpoints[1:-1])])
    gvals = cumulative_integral(g_prime, nodes, absolute=False, extra_breaks=np.unique(breaks))
    vals = m.derivative().evaluate_many(nodes) * gvals + m.evaluate_many(nodes) * g_prime.evaluate_many(nodes)
    if p.is_inf:
        masses = np.abs(vals).reshape(len(ns), -1).max(axis=1)
    else:
        masses = (weights * np.abs(vals) ** p.value).reshape(len(ns), -1).sum(axis=1)
    masses = masses[::-1]  # index by n = 1..depth
    idx = np.arange(1, depth + 1)
    late = slice(depth // 2, depth)
    pos = masses[late] > 0.0
    if pos.sum() < 4:
        return "convergent", -math.inf, math.inf, tuple(masses)
    sigma = float(np.polyfit(idx[late][pos], np.log2(masses[late][pos]), 1)[0])
    if sigma < -0.2:
        return "convergent", sigma, math.nan, tuple(masses)
    if sigma > 0.05:
        return "divergent", sigma, math.nan, tuple(masses)
    window = slice(max(0, depth // 4), depth)
    posw = masses[window] > 0.0
    q = -float(np.polyfit(np.log(idx[window][posw]), np.log(masses[window][posw]), 1)[0])
    if q > 1.15:
        return "convergent", sigma, q, tuple(masses)
    if q < 0.95:
        return "divergent", sigma, q, tuple(masses)
    return "ambiguous", sigma, q, tuple(masses)


def direct_check(
    m: PiecewiseFunction, g_prime: PiecewiseFunction, p: Exponent, r: Exponent
) -> DirectCheckReport:
    """Does m times the antiderivative g of g_prime stay in the target algebra?

    The leading order of g comes from the antiderivative rule; the dominant
    orders of m'g and mg' are combined with cancellation detection and the
    result's |.|^p integrability at 0 is classified analytically.  Dyadic
    partial masses of the exactly evaluated (mg)' confirm the classification
    and take over (possibly inconclusively) when the leading orders cancel.
    """
    gverd = classify_lp_at_zero(g_prime, r)
    if gverd.divergent:
        raise DomainError(f"witness derivative must lie in L^r, got: {gverd.reason}")
    notes: list[str] = []
    if m.is_zero or g_prime.is_zero:
        return DirectCheckReport(
            DirectOutcome.MEMBER,
            (Condition("product_identically_zero", True),),
            ("zero product lies in every algebra",),
        )
    dom_m = m.dominant_order()
    dom_mp = m.derivative().dominant_order()
    dom_gp = g_prime.dominant_order()
    g_lead = leading_antiderivative(dom_gp)
    mg_limit_zero = limit_from_order(dom_m.combine(g_lead)) == 0.0
    continuity = m.is_continuous()
    conditions = [
        Condition("mg_vanishes_at_zero", mg_limit_zero, analytic="dominant order"),
        Condition("m_continuous_on_0_1", continuity),
    ]
    if not (mg_limit_zero and continuity):
        return DirectCheckReport(DirectOutcome.NOT_MEMBER, tuple(conditions), tuple(notes))
    lead, cancelled = _dominant_of_pair(dom_mp.combine(g_lead), dom_m.combine(dom_gp))
    behaviour, sigma, q, _ = _numeric_block_behaviour(m, g_prime, p)
    conditions.append(
        Condition("numeric_block_masses", True, analytic=behaviour, empirical=sigma if math.isnan(q) else q)
    )
    if cancelled:
        notes.append("leading orders of m'g and mg' cancel; numeric evidence only")
        if behaviour == "convergent":
            return DirectCheckReport(DirectOutcome.MEMBER, tuple(conditions), tuple(notes))
        if behaviour == "divergent":
            return DirectCheckReport(DirectOutcome.NOT_MEMBER, tuple(conditions), tuple(notes))
        return DirectCheckReport(DirectOutcome.NUMERIC_INCONCLUSIVE, tuple(conditions), tuple(notes))
    assert lead is not None
    lp = classify_order(lead, p)
    conditions.append(
        Condition(
            "product_derivative_in_L_p",
            lp.convergent,
            analytic=f"|(mg)'|^p ~ t^{lead.a * (1 if p.is_inf else p.value):g} type: {lp.reason}",
            empirical=behaviour,
        )
    )
    if behaviour not in ("ambiguous",) and (behaviour == "convergent") != lp.convergent:
        notes.append("numeric confirmation disagrees with the analytic classification; analytic wins")
    outcome = DirectOutcome.MEMBER if lp.convergent else DirectOutcome.NOT_MEMBER
    return DirectCheckReport(outcome, tuple(conditions), tuple(notes))


# ------------------------------------------------------------------ verdict


def verdict(
    m: PiecewiseFunction, p: Exponent, r: Exponent, depth: int = DEFAULT_DEPTH
) -> MultiplierVerdict:
    """Dispatch the decision over the three exponent regimes.

    r < p: only the zero map multiplies; r = p: the definitive criterion;
    r > p: necessary test, then (for p > 1) sufficient test, then witness
    falsification, else Inconclusive.  For r > p = 1 no sufficient criterion
    is available, so nonzero m never earns Multiplier on that path.
    """
    if m.is_zero:
        if r < p:
            route = Route.R_LT_P
        elif r == p:
            route = Route.IFF_R_EQ_P
        else:
            route = Route.SUFFICIENT_PASSED
        return MultiplierVerdict(
            Verdict.MULTIPLIER,
            route,
            (Condition("zero_function", True),),
            ("the zero map multiplies between any pair of algebras",),
            p,
            r,
        )
    if r < p:
        return MultiplierVerdict(
            Verdict.NOT_MULTIPLIER,
            Route.R_LT_P,
            (Condition("m_is_zero", False),),
            ("only the zero map multiplies from a smaller into a larger exponent",),
            p,
            r,
        )
    if r == p:
        iff = iff_check_p_equals_r(m, p)
        v = Verdict.MULTIPLIER if iff.is_multiplier else Verdict.NOT_MULTIPLIER
        return MultiplierVerdict(v, Route.IFF_R_EQ_P, iff.conditions, (), p, r)
    nec = necessary_check(m, p, r)
    if not nec.passed:
        return MultiplierVerdict(
            Verdict.NOT_MULTIPLIER, Route.NECESSARY_FAILED, nec.conditions, (), p, r
        )
    conditions = list(nec.conditions)
    notes: list[str] = []
    if p.is_one:
        notes.append("no sufficient criterion is available for targets at p = 1")
        return MultiplierVerdict(
            Verdict.INCONCLUSIVE, Route.UNDETERMINED, tuple(conditions), tuple(notes), p, r
        )
    suf = sufficient_check(m, p, r, depth)
    conditions.extend(suf.conditions)
    if suf.passed:
        return MultiplierVerdict(
            Verdict.MULTIPLIER, Route.SUFFICIENT_PASSED, tuple(conditions), tuple(notes), p, r
        )
    for label, witness in (
        ("t^(-1/r) (1-ln t)^(-2/r)", spec_witness(r)),
        ("t^(-1/r) (1-ln t)^(-1/p)", sharp_witness(p, r)),
    ):
        report = direct_check(m, witness, p, r)
        conditions.append(
            Condition(
                f"witness_product_stays_member[{label}]",
                report.outcome is DirectOutcome.MEMBER,
                analytic=report.outcome.value,
            )
        )
        if report.outcome is DirectOutcome.NOT_MEMBER:
            notes.append(f"falsified by g' = {label}")
            return MultiplierVerdict(
                Verdict.NOT_MULTIPLIER,
                Route.DIRECT_COUNTEREXAMPLE,
                tuple(conditions),
                tuple(notes),
                p,
                r,
            )
    notes.append("necessary conditions hold, sufficient conditions fail, no witness falsifies")
    return MultiplierVerdict(
        Verdict.INCONCLUSIVE, Route.UNDETERMINED, tuple(conditions), tuple(notes), p, r
    )


# ------------------------------------------------------------------ operator norm


def operator_norm_bounds(
    m: PiecewiseFunction, p: Exponent, test_functions: tuple[PiecewiseFunction, ...] | None = None
) -> OperatorNormBounds:
    """Bracket the operator norm of g -> mg on the algebra at p.

    Upper bound from the constructive estimates behind the definitive
    criterion, with A the concrete constant realizing the tail-norm growth
    on the computed window and B = A(p-1)/(2^(1-p) - 4^(1-p)); lower bound
    from sup|m| and the best Rayleigh-type ratio |||mg|||/|||g||| over the
    supplied test functions (battery members by default).
    """
    iff = iff_check_p_equals_r(m, p)
    if not iff.is_multiplier:
        raise NotMultiplierError(f"m is not a multiplier at p = {p}")
    mprime = m.derivative()
    inv_pp = 0.0 if math.isinf(p.conjugate) else 1.0 / p.conjugate
    growth_a = 0.0
    if not mprime.is_zero:
        for j in range(1, 41):
            eps = 2.0**-j
            growth_a = max(growth_a, lp_norm_on(mprime, p, eps, 1.0).value * eps**inv_pp)
    sup_m = sup_abs_on(m, MESH_FLOOR, 1.0, include_zero_limit=True)
    if p.is_one:
        upper = sup_m + lp_norm_full(mprime, p).value
    elif p.is_inf:
        upper = sup_m + 2.0 * growth_a
    else:
        pv = p.value
        b_const = growth_a * (pv - 1.0) / (2.0 ** (1.0 - pv) - 4.0 ** (1.0 - pv))
        upper = sup_m + (b_const * (pv / (pv - 1.0)) ** pv + growth_a * 0.5 ** (-pv * inv_pp)) ** (1.0 / pv)
    if test_functions is None:
        from .battery import battery_members

        test_functions = tuple(f for _, f in battery_members(p))
    lower = sup_m
    from .algebra import banach_norm, membership

    for g in test_functions:
        rep = membership(g, p)
        if not rep.is_member or rep.norm == 0.0:
            continue
        lower = max(lower, banach_norm(m * g, p) / rep.norm)
    return OperatorNormBounds(lower, upper, growth_a, sup_m)
