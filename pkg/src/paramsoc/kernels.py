"""Backend selection for the enumeration kernels.

The compiled core is used when it imported successfully and the instance fits
in 64-bit masks and integers; otherwise the pure-Python twin runs. Setting
``PARAMSOC_PURE_PYTHON=1`` in the environment forces the Python backend.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

_LIMIT = 1 << 62
_active = "python" if (_kernels_c is None or os.environ.get("PARAMSOC_PURE_PYTHON")) else "cython"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _kernels_c is not None else [])


def backend() -> str:
    """Name of the backend currently selected (``"cython"`` or ``"python"``)."""
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in available_backends():
        raise ValueError(f"backend {name!r} is not available")
    _active = name


@contextmanager
def using_backend(name: str):
    """Temporarily switch backend, e.g. for benchmarks and tests."""
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _compiled(width: int, magnitude: int) -> bool:
    return _active == "cython" and width <= 64 and magnitude < _LIMIT


def cc_best(cost, m: int, k: int):
    """Best committee for a per-voter cost matrix; see ``_kernels_py.cc_best``."""
    n = len(cost)
    peak = max((max(map(abs, row)) for row in cost), default=0)
    if _compiled(m, peak * max(n, 1)):
        arr = np.ascontiguousarray(np.asarray(cost, dtype=np.int64).reshape(n, m))
        return _kernels_c.cc_best(arr, m, k)
    return _kernels_py.cc_best(cost, m, k)


def mav_best(masks, offsets, m: int, k: int):
    if _compiled(m, max(offsets, default=0) + m):
        return _kernels_c.mav_best(
            np.asarray(masks, dtype=np.uint64), np.asarray(offsets, dtype=np.int64), m, k
        )
    return _kernels_py.mav_best(list(masks), list(offsets), m, k)


def pav_best(masks, weights, m: int, k: int):
    if _compiled(m, max(weights) * max(len(masks), 1)):
        return _kernels_c.pav_best(
            np.asarray(masks, dtype=np.uint64), np.asarray(weights, dtype=np.int64), m, k
        )
    return _kernels_py.pav_best(list(masks), list(weights), m, k)


def first_blocking(kind, n, util, friends, current, candidates, weak, min_size, max_size):
    """First blocking coalition mask in (size, lex) order, or ``-1``.

    ``util`` is an ``n x n`` integer matrix (additive) and ``friends`` a list
    of out-neighbour masks (fa/ea); the unused one may be ``None``.
    """
    peak = 0
    if util is not None:
        peak = max((max(map(abs, row)) for row in util), default=0) * max(n, 1)
    peak = max(peak, max(map(abs, current), default=0), n * n)
    if _compiled(n, peak):
        u = np.zeros((n, n), dtype=np.int64) if util is None else np.asarray(util, dtype=np.int64)
        fr = np.zeros(n, dtype=np.uint64) if friends is None else np.asarray(friends, dtype=np.uint64)
        return _kernels_c.first_blocking(
            kind, n, np.ascontiguousarray(u), fr,
            np.asarray(current, dtype=np.int64), np.asarray(candidates, dtype=np.int64),
            bool(weak), min_size, max_size,
        )
    return _kernels_py.first_blocking(
        kind, n, util, friends or [0] * n, current, list(candidates), weak, min_size, max_size
    )
