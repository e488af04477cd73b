import math

import pytest

from acp.exponents import Exponent


def assert_close(actual, expected, rel=1e-12, abs_tol=0.0, label=""):
    if math.isinf(expected):
        assert math.isinf(actual) and (actual > 0) == (expected > 0), label
        return
    err = abs(actual - expected)
    if err > abs_tol + rel * abs(expected):
        pytest.fail(
            f"{label}: got {actual!r}, expected {expected!r} "
            f"(err {err:.3e} > rel {rel:g} abs {abs_tol:g})"
        )


@pytest.fixture(scope="session")
def p_grid():
    return tuple(Exponent(v) for v in (1.0, 1.5, 2.0, 4.0))
