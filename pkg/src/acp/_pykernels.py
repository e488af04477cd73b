"""Pure numpy evaluation kernels (fallback backend).

Every kernel evaluates finite sums sum_i c_i * t**a_i * (1 - ln t)**b_i on
points in (0, 1].  The compiled backend in _ckernels.pyx implements the same
signatures; acp.kernels picks one at import time.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def eval_termsum(coeffs, apows, bpows, ts):
    """Values of the term sum at each point of ts (1-d float64 array)."""
    ts = np.asarray(ts, dtype=np.float64)
    if len(coeffs) == 0 or ts.size == 0:
        return np.zeros_like(ts)
    lt = np.log(ts)
    llt = np.log1p(-lt)  # log(1 - ln t), well-defined since 1 - ln t >= 1
    expo = np.multiply.outer(lt, apows) + np.multiply.outer(llt, bpows)
    return np.exp(expo) @ np.asarray(coeffs, dtype=np.float64)


def weighted_abs_pow_sum(coeffs, apows, bpows, ts, ws, p):
    """sum_j ws[j] * |f(ts[j])|**p for the term sum f."""
    vals = eval_termsum(coeffs, apows, bpows, ts)
    return float(np.dot(np.asarray(ws, dtype=np.float64), np.abs(vals) ** p))
