"""L^p norms and integrals on (0, 1] with endpoint-singularity handling.

Strategy: integrands |f|^p are smooth on each cell of a graded mesh built
from dyadic blocks (2^-n, 2^-n+1], the function's own breakpoints, and the
sign changes of the term sum (|.|^p has kinks at simple roots).  Each cell
gets fixed-order Gauss-Legendre nodes; an order-8 pass on the same cells
gives the error estimate.  Below the mesh floor 2^-60 the remaining mass is
computed from the dominant term via the substitution u = 1 - ln t, which
turns power-log tails into incomplete-gamma-type integrals handled by
Gauss-Laguerre; the sub-dominant mixing error is reported, not ignored.

Cells are integrated in ascending order with deterministic reductions, so
results are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exponents import INF, ONE, Exponent, gap_exponent  # noqa: F401  (re-exported)
from .funcspace import (
    EXPONENT_TOL,
    AsymptoticOrder,
    DomainError,
    LpVerdict,
    PiecewiseFunction,
    TermSum,
    ZERO_ORDER,
    classify_lp_at_zero,
)

__all__ = [
    "Exponent",
    "QuadResult",
    "NormResult",
    "DivergenceEvidence",
    "DivergentIntegralError",
    "MESH_FLOOR",
    "lp_norm_on",
    "lp_norm_full",
    "lp_norm_zero_to",
    "integral_from_zero",
    "hardy_ratio",
    "cumulative_integral",
    "tail_power_log",
    "leading_antiderivative",
    "sup_abs_on",
]

GAUSS_ORDER = 16
ERR_ORDER = 8
DEEPEST_BLOCK = 60
MESH_FLOOR = 2.0**-DEEPEST_BLOCK
_LAGUERRE_ORDER = 64

_G16 = np.polynomial.legendre.leggauss(GAUSS_ORDER)
_G8 = np.polynomial.legendre.leggauss(ERR_ORDER)
_LAG = np.polynomial.laguerre.laggauss(_LAGUERRE_ORDER)


class DivergentIntegralError(ValueError):
    """Raised when an operation requires an integrable singularity and f has none."""

    def __init__(self, message: str, verdict: LpVerdict | None = None):
        super().__init__(message)
        self.verdict = verdict


class _TailDivergence(ValueError):
    pass


@dataclass(frozen=True)
class QuadResult:
    """A non-negative value with attached upper error estimates."""

    value: float
    est_error: float
    blocks_used: int
    tail_bound: float

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "est_error": self.est_error,
            "blocks_used": self.blocks_used,
            "tail_bound": self.tail_bound,
        }


@dataclass(frozen=True)
class DivergenceEvidence:
    """Audit trail for an Infinite verdict: dyadic masses and their growth."""

    order: AsymptoticOrder
    block_masses: tuple[float, ...]
    partial_sums: tuple[float, ...]
    fitted_exponent: float
    note: str

    def to_dict(self) -> dict:
        return {
            "dominant_order": {"a": self.order.a, "b": self.order.b, "coeff": self.order.coeff},
            "block_masses": list(self.block_masses),
            "partial_sums": list(self.partial_sums),
            "fitted_exponent": self.fitted_exponent,
            "note": self.note,
        }


@dataclass(frozen=True)
class NormResult:
    """Finite(QuadResult) or Infinite(with divergence evidence)."""

    is_finite: bool
    quad: QuadResult | None
    evidence: DivergenceEvidence | None

    @property
    def value(self) -> float:
        return self.quad.value if self.is_finite else math.inf

    def to_dict(self) -> dict:
        out: dict = {"finite": self.is_finite, "value": self.value}
        if self.quad is not None:
            out["quad"] = self.quad.to_dict()
        if self.evidence is not None:
            out["evidence"] = self.evidence.to_dict()
        return out


# ------------------------------------------------------------------ meshes


def _mesh_points(f: PiecewiseFunction, lo: float, hi: float) -> list[float]:
    pts = {lo, hi}
    pts.update(x for x in f.breakpoints if lo < x < hi)
    for n in range(1, DEEPEST_BLOCK + 1):
        d = 2.0**-n
        if d <= lo:
            break
        if d < hi:
            pts.add(d)
    out = sorted(pts)
    dedup = [out[0]]
    for x in out[1:]:
        if x - dedup[-1] > 1e-15 * x:
            dedup.append(x)
    dedup[-1] = hi
    return dedup


def _sign_splits(ts: TermSum, lo: float, hi: float, samples: int = 17) -> list[float]:
    """Roots of the term sum strictly inside (lo, hi), by scan + bisection."""
    if len(ts.terms) < 2:
        return []  # a single power-log term never vanishes on (0, 1]
    xs = np.linspace(lo, hi, samples)
    vals = ts.evaluate_many(xs)
    roots: list[float] = []
    for i in range(samples - 1):
        va, vb = vals[i], vals[i + 1]
        if va == 0.0:
            if i > 0:
                roots.append(float(xs[i]))
            continue
        if va * vb < 0.0:
            a, b = float(xs[i]), float(xs[i + 1])
            fa = va
            for _ in range(80):
                mid = 0.5 * (a + b)
                fm = ts.evaluate(mid)
                if fm == 0.0:
                    a = b = mid
                    break
                if fa * fm < 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
                if b - a <= 1e-15 * b:
                    break
            roots.append(0.5 * (a + b))
    return [r for r in roots if lo < r < hi]


def _segments(
    f: PiecewiseFunction, lo: float, hi: float, *, split_roots: bool
) -> tuple[np.ndarray, np.ndarray]:
    """(los, his) arrays of mesh cells covering (lo, hi], each inside one piece."""
    base = _mesh_points(f, lo, hi)
    cuts: list[float] = list(base)
    if split_roots:
        for a, b in zip(base, base[1:]):
            ts = f.pieces[f.piece_index(b)]
            cuts.extend(_sign_splits(ts, a, b))
    cuts = sorted(set(cuts))
    los = np.array(cuts[:-1])
    his = np.array(cuts[1:])
    return los, his


def _gauss_nodes(los: np.ndarray, his: np.ndarray, rule) -> tuple[np.ndarray, np.ndarray]:
    x, w = rule
    mid = 0.5 * (los + his)[:, None]
    half = 0.5 * (his - los)[:, None]
    nodes = mid + half * x[None, :]
    weights = half * w[None, :]
    return nodes.ravel(), weights.ravel()


# ------------------------------------------------------------------ tails


def tail_power_log(a: float, b: float, eps: float) -> float:
    """Integral of t**a * (1 - ln t)**b over (0, eps], for an integrable tail.

    Substituting u = 1 - ln t turns the tail into
    eps**(a+1) / (a+1) * integral_0^inf e^-s (u0 + s/(a+1))**b ds with
    u0 = 1 - ln eps, integrated by composite Gauss cells of width 4 on the
    decay scale (machine precision for every real b).  On the boundary
    a = -1, b < -1 the antiderivative is exact.
    """
    lam = a + 1.0
    u0 = 1.0 - math.log(eps)
    if lam > EXPONENT_TOL:
        x, w = _G16
        total = 0.0
        for j in range(30):  # covers s in [0, 120]; e^-120 is far below double noise
            s_lo, s_hi = 4.0 * j, 4.0 * (j + 1)
            s = 0.5 * (s_lo + s_hi) + 2.0 * x
            ws = 2.0 * w
            total += float(np.dot(ws, np.exp(-s) * (u0 + s / lam) ** b))
        return eps**lam / lam * total
    if abs(lam) <= EXPONENT_TOL and b < -1.0 - EXPONENT_TOL:
        return u0 ** (b + 1.0) / (-(b + 1.0))
    raise _TailDivergence(f"tail of t^{a} (1-ln t)^{b} is not integrable")


def leading_antiderivative(order: AsymptoticOrder) -> AsymptoticOrder:
    """Dominant order of t -> integral of the order's term over (0, t].

    For a > -1 the integral behaves like coeff/(a+1) * t^(a+1) (1-ln t)^b;
    on the boundary a = -1, b < -1 it is exactly coeff/(-(b+1)) * (1-ln t)^(b+1).
    """
    if order.is_zero:
        return ZERO_ORDER
    if order.a > -1.0 + EXPONENT_TOL:
        return AsymptoticOrder(order.a + 1.0, order.b, order.coeff / (order.a + 1.0))
    if abs(order.a + 1.0) <= EXPONENT_TOL and order.b < -1.0 - EXPONENT_TOL:
        return AsymptoticOrder(0.0, order.b + 1.0, order.coeff / (-(order.b + 1.0)))
    raise DivergentIntegralError(f"antiderivative of order {order} diverges at 0")


# ------------------------------------------------------------------ masses


def _abs_pow_mass(
    f: PiecewiseFunction, p: float, lo: float, hi: float
) -> tuple[float, float, int]:
    """(mass, err_est, cells) for the integral of |f|^p over (lo, hi]."""
    los, his = _segments(f, lo, hi, split_roots=True)
    m16 = _cell_masses(f, p, los, his, _G16)
    m8 = _cell_masses(f, p, los, his, _G8)
    return float(m16.sum()), float(np.abs(m16 - m8).sum()), len(los)


def _cell_masses(f, p, los, his, rule) -> np.ndarray:
    nodes, weights = _gauss_nodes(los, his, rule)
    vals = f.evaluate_many(nodes)
    per_node = weights * np.abs(vals) ** p
    return per_node.reshape(len(los), -1).sum(axis=1)


def _signed_cell_sums(f, los, his, rule) -> np.ndarray:
    nodes, weights = _gauss_nodes(los, his, rule)
    vals = f.evaluate_many(nodes)
    return (weights * vals).reshape(len(los), -1).sum(axis=1)


def _dominant_tail_mass(f: PiecewiseFunction, p: float, eps: float) -> tuple[float, float]:
    """(tail, uncertainty) of the |f|^p mass on (0, eps] from the dominant term."""
    order = f.dominant_order()
    if order.is_zero:
        return 0.0, 0.0
    tail = abs(order.coeff) ** p * tail_power_log(order.a * p, order.b * p, eps)
    dom_val = order.evaluate(eps)
    full_val = f.evaluate(eps)
    delta = abs(full_val - dom_val) / abs(dom_val) if dom_val != 0.0 else 1.0
    if delta >= 0.5:
        unc = tail
    else:
        unc = tail * min(1.0, math.expm1(p * delta / (1.0 - delta)))
    return tail, unc


# ------------------------------------------------------------------ sup norm


def sup_abs_on(
    f: PiecewiseFunction, lo: float, hi: float, *, include_zero_limit: bool = False
) -> float:
    """Essential sup of |f| on (lo, hi] (term sums are continuous per piece).

    Heuristic with refinement: candidates are cell endpoints, a per-cell
    sample scan, and the sign changes of the derivative term sum (bisected);
    with include_zero_limit the t -> 0+ limit joins the candidates.
    """
    if include_zero_limit:
        lim = abs(f.limit_at_zero)
        if math.isinf(lim):
            return math.inf
    else:
        lim = 0.0
    los, his = _segments(f, lo, hi, split_roots=False)
    derivs = [p.derivative() for p in f.pieces]
    candidates: list[float] = [float(los[0])] + [float(x) for x in his]
    best_samples = 0.0
    for a, b in zip(los, his):
        idx = f.piece_index(float(b))
        xs = np.linspace(float(a), float(b), 17)
        best_samples = max(best_samples, float(np.abs(f.pieces[idx].evaluate_many(xs)).max()))
        candidates.extend(_sign_splits(derivs[idx], float(a), float(b)))
    cand = np.array(sorted(set(candidates)))
    cand = cand[(cand > 0.0) & (cand <= 1.0)]
    best_candidates = float(np.abs(f.evaluate_many(cand)).max()) if cand.size else 0.0
    return max(lim, best_samples, best_candidates)


# ------------------------------------------------------------------ public api


def lp_norm_on(f: PiecewiseFunction, p: Exponent, lo: float, hi: float) -> QuadResult:
    """(integral of |f|^p over [lo, hi])**(1/p), or the sup for p = inf.

    Requires 0 < lo < hi <= 1; the integrand is continuous there, so no tail
    handling is needed.
    """
    if not (0.0 < lo < hi <= 1.0):
        raise DomainError(f"need 0 < lo < hi <= 1, got [{lo}, {hi}]")
    if p.is_inf:
        value = sup_abs_on(f, lo, hi)
        return QuadResult(value, 1e-14 * max(1.0, value), 0, 0.0)
    mass, err, cells = _abs_pow_mass(f, p.value, lo, hi)
    return QuadResult(_root(mass, p.value), _root_err(mass, err, p.value), cells, 0.0)


def _root(mass: float, p: float) -> float:
    return mass ** (1.0 / p) if mass > 0.0 else 0.0


def _root_err(mass: float, err: float, p: float) -> float:
    if mass <= 0.0:
        return err ** (1.0 / p) if err > 0.0 else 0.0
    return err / (p * mass ** (1.0 - 1.0 / p))


def lp_norm_zero_to(f: PiecewiseFunction, p: Exponent, hi: float) -> NormResult:
    """L^p norm of f over (0, hi], with the singular endpoint handled."""
    if not (MESH_FLOOR < hi <= 1.0):
        raise DomainError(f"need {MESH_FLOOR:.3e} < hi <= 1, got {hi}")
    verdict = classify_lp_at_zero(f, p)
    if verdict.divergent:
        return NormResult(False, None, _divergence_evidence(f, p, verdict))
    if p.is_inf:
        value = sup_abs_on(f, MESH_FLOOR, hi, include_zero_limit=True)
        return NormResult(True, QuadResult(value, 1e-14 * max(1.0, value), 0, 0.0), None)
    mass, err, cells = _abs_pow_mass(f, p.value, MESH_FLOOR, hi)
    tail, unc = _dominant_tail_mass(f, p.value, MESH_FLOOR)
    total = mass + tail
    value = _root(total, p.value)
    return NormResult(
        True,
        QuadResult(value, _root_err(total, err + unc, p.value), cells, _root_err(total, unc, p.value)),
        None,
    )


def lp_norm_full(f: PiecewiseFunction, p: Exponent) -> NormResult:
    """L^p(0, 1] membership and norm: Finite(QuadResult) or Infinite(evidence).

    The analytic classifier is authoritative; quadrature only quantifies the
    convergent case (graded mesh plus the dominant-term tail below 2^-60).
    """
    return lp_norm_zero_to(f, p, 1.0)


def _divergence_evidence(f: PiecewiseFunction, p: Exponent, verdict: LpVerdict) -> DivergenceEvidence:
    masses = []
    for n in range(1, 15):
        lo, hi = 2.0**-n, 2.0 ** (-n + 1)
        if p.is_inf:
            masses.append(sup_abs_on(f, lo, hi))
        else:
            masses.append(_abs_pow_mass(f, p.value, lo, hi)[0])
    arr = np.array(masses)
    positive = arr > 0.0
    if positive.sum() >= 2:
        ns = np.arange(1, 15)[positive]
        slope = float(np.polyfit(ns, np.log2(arr[positive]), 1)[0])
    else:
        slope = 0.0
    return DivergenceEvidence(
        order=verdict.order,
        block_masses=tuple(float(x) for x in arr),
        partial_sums=tuple(float(x) for x in np.cumsum(arr)),
        fitted_exponent=slope,
        note=verdict.reason,
    )


def integral_from_zero(f: PiecewiseFunction, t: float) -> float:
    """Signed integral of f over (0, t], for f integrable at 0.

    Mesh cells cover (2^-60, t]; below the floor every term of the first
    piece admits an exact-tail formula (the integral is linear, so per-term
    tails sum exactly).  Relative accuracy target: 1e-9.
    """
    if not (0.0 < t <= 1.0):
        raise DomainError(f"t = {t!r} outside (0, 1]")
    verdict = classify_lp_at_zero(f, ONE)
    if verdict.divergent:
        raise DivergentIntegralError("f is not integrable at 0", verdict)
    base = _terms_tail_signed(f, MESH_FLOOR)
    if t <= MESH_FLOOR:
        raise DomainError(f"t = {t!r} at or below the mesh floor {MESH_FLOOR:.3e}")
    los, his = _segments(f, MESH_FLOOR, t, split_roots=False)
    return base + float(_signed_cell_sums(f, los, his, _G16).sum())


def _terms_tail_signed(f: PiecewiseFunction, eps: float) -> float:
    total = 0.0
    for term in f.pieces[0].terms:
        total += term.coeff * tail_power_log(term.a, term.b, eps)
    return total


def cumulative_integral(
    f: PiecewiseFunction,
    pts: np.ndarray,
    *,
    absolute: bool = False,
    extra_breaks: np.ndarray | None = None,
) -> np.ndarray:
    """Antiderivative values A(x) = integral over (0, x] of f (or |f|) at sorted pts.

    One ascending pass: the value at pts[0] comes from the tail machinery,
    and consecutive gaps are integrated with order-8 Gauss cells split at
    extra_breaks.  For absolute=True, pass the sign-change points of f in
    extra_breaks; below 2^-60 the dominant term is assumed single-signed.
    """
    pts = np.asarray(pts, dtype=np.float64)
    if pts.size == 0:
        return pts.copy()
    if np.any(np.diff(pts) < 0.0):
        raise DomainError("pts must be ascending")
    inner = set(float(x) for x in (extra_breaks if extra_breaks is not None else ()))
    merged = sorted(set(pts.tolist()) | {x for x in inner if pts[0] < x < pts[-1]})
    grid = np.array(merged)
    if absolute:
        base_mass, _, _ = _abs_pow_mass(f, 1.0, MESH_FLOOR, float(pts[0]))
        base = base_mass + abs(_terms_tail_signed(f, MESH_FLOOR))
    else:
        base = integral_from_zero(f, float(pts[0]))
    if grid.size >= 2:
        los, his = grid[:-1], grid[1:]
        nodes, weights = _gauss_nodes(los, his, _G8)
        vals = f.evaluate_many(nodes)
        if absolute:
            vals = np.abs(vals)
        cell = (weights * vals).reshape(len(los), -1).sum(axis=1)
        acc = np.concatenate([[0.0], np.cumsum(cell)])
    else:
        acc = np.zeros(1)
    at_grid = base + acc
    idx = np.searchsorted(grid, pts)
    return at_grid[idx]


def hardy_ratio(gprime: PiecewiseFunction, p: Exponent) -> float:
    """||s -> (1/s) * integral_0^s |g'|||_p divided by ||g'||_p, for 1 < p < inf.

    Hardy's inequality bounds this by p/(p-1); the averaged function inherits
    a power-log dominant order from g', which supplies the tail below 2^-60.
    """
    if p.is_one or p.is_inf:
        raise DomainError("hardy_ratio requires 1 < p < inf")
    verdict = classify_lp_at_zero(gprime, p)
    if verdict.divergent:
        raise DivergentIntegralError("g' must lie in L^p", verdict)
    if gprime.is_zero:
        return 0.0
    den = lp_norm_full(gprime, p).value
    los, his = _segments(gprime, MESH_FLOOR, 1.0, split_roots=True)
    nodes, weights = _gauss_nodes(los, his, _G16)
    boundaries = np.concatenate([los, his[-1:]])
    avals = cumulative_integral(gprime, nodes, absolute=True, extra_breaks=boundaries)
    hvals = avals / nodes
    mass = float(np.dot(weights, hvals**p.value))
    order = gprime.dominant_order()
    lead = leading_antiderivative(AsymptoticOrder(order.a, order.b, abs(order.coeff)))
    h_order = AsymptoticOrder(lead.a - 1.0, lead.b, lead.coeff)
    tail = abs(h_order.coeff) ** p.value * tail_power_log(
        h_order.a * p.value, h_order.b * p.value, MESH_FLOOR
    )
    num = _root(mass + tail, p.value)
    return num / den
