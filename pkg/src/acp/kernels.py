"""Backend selection for the evaluation kernels.

The compiled backend (acp._ckernels, built from Cython) is preferred; the
numpy backend is the fallback.  Set ACP_PURE=1 in the environment before
import, or call set_backend(), to force the pure backend.  Switching backends
is process-level configuration intended for startup, tests and benchmarks.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _ckernels  # type: ignore[attr-defined]
except ImportError:
    _ckernels = None

_impl = _pykernels if (os.environ.get("ACP_PURE") == "1" or _ckernels is None) else _ckernels


def backend_name() -> str:
    return _impl.NAME


def available_backends() -> tuple[str, ...]:
    return ("numpy",) if _ckernels is None else ("cython", "numpy")


def set_backend(name: str) -> None:
    global _impl
    if name == "numpy":
        _impl = _pykernels
    elif name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled backend not available")
        _impl = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")


def eval_termsum(coeffs, apows, bpows, ts):
    return _impl.eval_termsum(coeffs, apows, bpows, ts)


def weighted_abs_pow_sum(coeffs, apows, bpows, ts, ws, p):
    return _impl.weighted_abs_pow_sum(coeffs, apows, bpows, ts, ws, p)
