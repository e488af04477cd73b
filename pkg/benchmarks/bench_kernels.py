"""Benchmark: compiled kernel vs numpy fallback.

Times the two kernel entry points on realistic workloads (term-sum
evaluation over graded-mesh node counts, fused |f|^p block masses) and one
end-to-end norm pipeline.  Run:

    python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from acp import kernels
from acp.expr import parse
from acp.exponents import Exponent
from acp.quadrature import lp_norm_full


def _time(fn, *, repeat: int = 5, min_time: float = 0.2) -> float:
    """Best-of-repeat seconds per call, with auto-scaled inner loops."""
    n = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(n):
            fn()
        dt = time.perf_counter() - t0
        if dt >= min_time:
            break
        n *= 2
    best = dt / n
    for _ in range(repeat - 1):
        t0 = time.perf_counter()
        for _ in range(n):
            fn()
        best = min(best, (time.perf_counter() - t0) / n)
    return best


def main() -> None:
    available = kernels.available_backends()
    print(f"available backends: {', '.join(available)}")
    rng = np.random.default_rng(7)
    coeffs = np.array([1.0, -0.5, 0.25])
    apows = np.array([-0.25, 0.4, 1.3])
    bpows = np.array([-0.5, 1.0, 0.0])
    f = parse("t^-0.25*L^-0.5 + 2*t - 0.5*t^1.3*L^2")
    p2 = Exponent(2.0)

    workloads = []
    for size in (1_024, 16_384, 262_144):
        ts = np.sort(rng.uniform(1e-12, 1.0, size))
        ws = rng.uniform(0.0, 1.0, size)
        workloads.append(
            (
                f"eval_termsum n={size}",
                lambda ts=ts: kernels.eval_termsum(coeffs, apows, bpows, ts),
            )
        )
        workloads.append(
            (
                f"weighted_abs_pow_sum n={size}",
                lambda ts=ts, ws=ws: kernels.weighted_abs_pow_sum(
                    coeffs, apows, bpows, ts, ws, 2.0
                ),
            )
        )
    workloads.append(("lp_norm_full pipeline", lambda: lp_norm_full(f, p2)))

    results: dict[str, dict[str, float]] = {label: {} for label, _ in workloads}
    for name in available:
        kernels.set_backend(name)
        for label, fn in workloads:
            results[label][name] = _time(fn)
    kernels.set_backend(available[0])

    width = max(len(label) for label in results) + 2
    header = f"{'workload':<{width}s}" + "".join(f"{n:>14s}" for n in available)
    if len(available) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))
    for label, timings in results.items():
        cells = "".join(f"{timings[n] * 1e6:>12.1f}us" for n in available)
        if "cython" in timings and "numpy" in timings:
            cells += f"{timings['numpy'] / timings['cython']:>9.2f}x"
        print(f"{label:<{width}s}" + cells)


if __name__ == "__main__":
    main()
