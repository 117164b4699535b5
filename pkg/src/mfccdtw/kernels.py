"""Backend selection for the hot loops.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
numpy/pure-Python module ``_pykernels`` takes over. Both expose
``fft_rows``, ``sqdist``, ``accumulate`` and ``accumulate_slope`` with identical
semantics.
"""

from __future__ import annotations

import contextlib

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not compiled
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

_active = _BACKENDS.get("cython", _pykernels)


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend_name() -> str:
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name: str) -> None:
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}") from None


@contextlib.contextmanager
def backend(name: str):
    """Temporarily switch backend (tests and benchmarks)."""
    previous = backend_name()
    use_backend(name)
    try:
        yield
    finally:
        use_backend(previous)


def fft_rows(re, im, tw_re, tw_im, rev):
    re = np.ascontiguousarray(re, dtype=np.float64)
    im = np.ascontiguousarray(im, dtype=np.float64)
    _active.fft_rows(re, im, np.ascontiguousarray(tw_re, dtype=np.float64),
                     np.ascontiguousarray(tw_im, dtype=np.float64),
                     np.ascontiguousarray(rev, dtype=np.intp))
    return re, im


def sqdist(q, c):
    return _active.sqdist(np.ascontiguousarray(q, dtype=np.float64),
                          np.ascontiguousarray(c, dtype=np.float64))


def accumulate(dist, lo, hi):
    return _active.accumulate(np.ascontiguousarray(dist, dtype=np.float64),
                              np.ascontiguousarray(lo, dtype=np.int64),
                              np.ascontiguousarray(hi, dtype=np.int64))


def accumulate_slope(dist, lo, hi, max_run):
    return _active.accumulate_slope(np.ascontiguousarray(dist, dtype=np.float64),
                                    np.ascontiguousarray(lo, dtype=np.int64),
                                    np.ascontiguousarray(hi, dtype=np.int64),
                                    int(max_run))
