"""Quadrature against closed forms and an independent mpmath oracle."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acp.exponents import Exponent, INF, ONE, TWO, gap_exponent
from acp.expr import ealpha, parse
from acp.funcspace import DomainError
from acp.quadrature import (
    DivergentIntegralError,
    MESH_FLOOR,
    cumulative_integral,
    hardy_ratio,
    integral_from_zero,
    leading_antiderivative,
    lp_norm_full,
    lp_norm_on,
    lp_norm_zero_to,
    sup_abs_on,
    tail_power_log,
)
from conftest import assert_close


# ------------------------------------------------------------ Exponent type


def test_exponent_conjugates():
    assert Exponent(1.0).conjugate == math.inf
    assert Exponent(math.inf).conjugate == 1.0
    assert_close(Exponent(1.5).conjugate, 3.0)
    for v in (1.0, 1.25, 2.0, 7.0, math.inf):
        assert Exponent(v).holder_ok()
    assert Exponent.parse("inf").is_inf
    assert Exponent.parse("2").value == 2.0
    with pytest.raises(ValueError):
        Exponent(0.5)


def test_gap_exponent():
    assert_close(gap_exponent(TWO, Exponent(4.0)).value, 4.0)
    assert_close(gap_exponent(Exponent(1.5), Exponent(3.0)).value, 3.0)
    assert_close(gap_exponent(TWO, INF).value, 2.0)
    with pytest.raises(ValueError):
        gap_exponent(TWO, TWO)


# ------------------------------------------------------------ lp_norm_on


def test_constant_on_subinterval():
    r = lp_norm_on(parse("1"), TWO, 0.25, 1.0)
    assert_close(r.value, math.sqrt(0.75), rel=1e-13)


def test_ramp_derivative_on_subinterval():
    r = lp_norm_on(ealpha(0.25).derivative(), TWO, 0.01, 1.0)
    assert_close(r.value, 4.0 * math.sqrt(0.24), rel=1e-13)


def test_lp_norm_on_validates_interval():
    for lo, hi in ((0.0, 1.0), (0.5, 0.5), (0.2, 1.5)):
        with pytest.raises(DomainError):
            lp_norm_on(parse("t"), TWO, lo, hi)


@given(st.floats(0.01, 0.4), st.floats(0.5, 1.0))
@settings(max_examples=40, deadline=None)
def test_lp_norm_on_monotone_in_interval(lo, hi):
    f = parse("t^-0.25*L^-0.5 + 2*t")
    inner = lp_norm_on(f, TWO, lo + 0.05, hi - 0.05, ).value
    outer = lp_norm_on(f, TWO, lo, hi).value
    assert inner <= outer + 1e-12


# ------------------------------------------------------------ lp_norm_full


def test_power_norm_closed_form():
    r = lp_norm_full(parse("t^-0.25"), TWO)
    assert r.is_finite
    assert_close(r.value, math.sqrt(2.0), rel=1e-12)
    assert r.quad.est_error < 1e-10


def test_ramp_derivative_full_norm():
    assert_close(lp_norm_full(ealpha(0.25).derivative(), TWO).value, 2.0, rel=1e-13)


def test_constant_sup_norm():
    r = lp_norm_full(parse("1"), INF)
    assert r.is_finite and r.value == 1.0


def test_divergent_norm_with_evidence():
    r = lp_norm_full(parse("t^-1.25"), TWO)
    assert not r.is_finite
    assert r.value == math.inf
    ev = r.evidence
    assert ev is not None
    # |f|^2 block mass grows like 2^(1.5 n)
    assert_close(ev.fitted_exponent, 1.5, rel=1e-3)
    assert ev.partial_sums[-1] > ev.partial_sums[0]


def test_consistency_with_classifier_battery():
    from acp.battery import random_power_log
    from acp.funcspace import classify_lp_at_zero

    rng = np.random.default_rng(7)
    for k in range(30):
        p = Exponent((1.0, 1.5, 2.0, 4.0)[k % 4])
        f = random_power_log(rng, p.value)
        assert lp_norm_full(f, p).is_finite is classify_lp_at_zero(f, p).convergent


def test_closed_form_grid_powers():
    for pv in (1.0, 1.5, 2.0, 4.0):
        for a in (-0.6, -0.25, 0.0, 0.5):
            if a * pv <= -1.0:
                continue
            r = lp_norm_full(parse(f"t^{a}") if a else parse("1"), Exponent(pv))
            assert_close(
                r.value, (1.0 / (a * pv + 1.0)) ** (1.0 / pv), rel=1e-10,
                label=f"p={pv}, a={a}",
            )


# ------------------------------------------------------------ tails


def test_tail_power_log_against_mpmath():
    mpmath.mp.dps = 30
    for a, b in ((-0.9, 0.0), (-0.5, -2.0), (0.3, 1.7), (-0.99, 3.0), (2.0, -4.0)):
        eps = mpmath.mpf(2.0) ** -60
        u0 = 1 - mpmath.log(eps)
        lam = a + 1
        exact = mpmath.quad(lambda u: mpmath.e ** (lam * (1 - u)) * u**b, [u0, mpmath.inf])
        got = tail_power_log(a, b, 2.0**-60)
        assert_close(got, float(exact), rel=1e-11, label=f"tail a={a} b={b}")


def test_tail_boundary_log_closed_form():
    # a = -1, b < -1: integral over (0, eps] of t^-1 (1-ln t)^b = (1-ln eps)^(b+1)/(-(b+1))
    got = tail_power_log(-1.0, -2.0, 2.0**-60)
    assert_close(got, 1.0 / (1.0 + 60.0 * math.log(2.0)), rel=1e-14)
    with pytest.raises(ValueError):
        tail_power_log(-1.0, -1.0, 0.5)


def test_leading_antiderivative_rules():
    from acp.funcspace import AsymptoticOrder

    lead = leading_antiderivative(AsymptoticOrder(-0.25, -0.5, 1.0))
    assert_close(lead.a, 0.75)
    assert_close(lead.b, -0.5)
    assert_close(lead.coeff, 4.0 / 3.0)
    boundary = leading_antiderivative(AsymptoticOrder(-1.0, -2.0, 3.0))
    assert (boundary.a, boundary.b) == (0.0, -1.0)
    assert_close(boundary.coeff, 3.0)
    with pytest.raises(DivergentIntegralError):
        leading_antiderivative(AsymptoticOrder(-1.5, 0.0, 1.0))


# ------------------------------------------------------------ integral_from_zero


def test_integral_closed_forms():
    assert_close(integral_from_zero(parse("1"), 0.5), 0.5, rel=1e-13)
    assert_close(integral_from_zero(parse("t^-0.5"), 1.0), 2.0, rel=1e-11)


def test_integral_power_log_against_mpmath():
    mpmath.mp.dps = 25
    exact = mpmath.quad(
        lambda t: t ** mpmath.mpf(-0.25) * (1 - mpmath.log(t)) ** mpmath.mpf(-0.5),
        [0, 1],
    )
    got = integral_from_zero(parse("t^-0.25*L^-0.5"), 1.0)
    assert_close(got, float(exact), rel=1e-9)


def test_integral_rejects_divergent():
    with pytest.raises(DivergentIntegralError):
        integral_from_zero(parse("t^-1"), 1.0)


@pytest.mark.parametrize("t", [0.1, 0.5, 0.9])
def test_integral_derivative_is_integrand(t):
    f = parse("t^-0.25*L^-0.5 + 2*t")
    h = 1e-6 * t
    fd = (integral_from_zero(f, t + h) - integral_from_zero(f, t - h)) / (2 * h)
    assert_close(fd, f.evaluate(t), rel=1e-5, label=f"d/dt integral at {t}")


def test_cumulative_integral_matches_pointwise():
    f = parse("t^-0.25*L^-0.5 + 2*t")
    pts = np.array([0.001, 0.12, 0.5, 0.53, 1.0])
    vals = cumulative_integral(f, pts)
    for x, v in zip(pts, vals):
        assert_close(v, integral_from_zero(f, float(x)), rel=1e-9)


def test_cumulative_integral_absolute():
    f = parse("1 - 2*t")  # sign change at 1/2
    pts = np.array([0.25, 0.5, 0.75, 1.0])
    vals = cumulative_integral(f, pts, absolute=True, extra_breaks=np.array([0.5]))
    # integral of |1-2t|: t - t^2 up to 1/2, then 1/4 + (t-1/2)^2... evaluate directly
    def exact(x):
        if x <= 0.5:
            return x - x * x
        return 0.25 + (x - 0.5) ** 2

    for x, v in zip(pts, vals):
        assert_close(v, exact(float(x)), rel=1e-10)


# ------------------------------------------------------------ sup norms


def test_sup_with_interior_max():
    # |t(1-t)| peaks at 1/4
    f = parse("t - t^2")
    assert_close(sup_abs_on(f, MESH_FLOOR, 1.0), 0.25, rel=1e-12)


def test_sup_includes_zero_limit():
    f = parse("1 - 2*t")
    assert_close(sup_abs_on(f, MESH_FLOOR, 1.0, include_zero_limit=True), 1.0, rel=1e-12)
    assert sup_abs_on(parse("L"), MESH_FLOOR, 1.0, include_zero_limit=True) == math.inf


# ------------------------------------------------------------ hardy


def test_hardy_constant():
    assert_close(hardy_ratio(parse("1"), TWO), 1.0, rel=1e-10)


def test_hardy_power_closed_form():
    assert_close(hardy_ratio(parse("t^-0.25"), TWO), 4.0 / 3.0, rel=1e-8)


def test_hardy_power_log_bounded():
    p = TWO
    ratio = hardy_ratio(parse("t^-0.3333333333333333*L^-1"), p)
    assert 0.0 < ratio <= 2.0 + 1e-6


def test_hardy_rejects_endpoint_exponents():
    with pytest.raises(DomainError):
        hardy_ratio(parse("1"), ONE)
    with pytest.raises(DomainError):
        hardy_ratio(parse("1"), INF)
    with pytest.raises(DivergentIntegralError):
        hardy_ratio(parse("t^-0.5"), TWO)


def test_lp_norm_zero_to_head_norm():
    # ||chi_(0, 1/4]||_1 = 1/4 for the constant 1
    assert_close(lp_norm_zero_to(parse("1"), ONE, 0.25).value, 0.25, rel=1e-13)
    assert_close(
        lp_norm_zero_to(parse("t^-0.25"), TWO, 0.5).value,
        math.sqrt(2.0 * 0.5**0.5), rel=1e-12,
    )
