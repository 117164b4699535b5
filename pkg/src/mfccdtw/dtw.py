"""Dynamic time warping with optional Sakoe-Chiba band and slope constraint.

Sequences are ``n x D`` arrays (1-D input is treated as ``D = 1``). The local
distance between two frames is the sum of squared per-dimension differences,
and the accumulated cost follows

    D(i, j) = d(i, j) + min(D(i-1, j-1), D(i-1, j), D(i, j-1))

with ``D(1, 1) = d(1, 1)``. Paths use 1-based ``(i, j)`` pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionMismatchError, EmptySequenceError, InfeasibleConstraintsError

_DIAG, _VERT, _HORIZ = 0, 1, 2


@dataclass(frozen=True)
class DtwConfig:
    """Path constraints.

    band_radius_r
        Adjustment window: cells with ``|i - j| > max(r, |n - m|)`` are
        excluded. ``None`` means unconstrained.
    max_run_S
        Slope constraint: at most this many consecutive vertical (or
        horizontal) steps. ``None`` means unconstrained.
    normalize
        Rank by ``distance / (n + m)`` rather than the raw distance.
    """

    band_radius_r: int | None = None
    max_run_S: int | None = None
    normalize: bool = True

    def __post_init__(self):
        if self.band_radius_r is not None and self.band_radius_r < 0:
            raise ValueError(f"band radius must be >= 0, got {self.band_radius_r}")
        if self.max_run_S is not None and self.max_run_S < 1:
            raise ValueError(f"max run must be >= 1, got {self.max_run_S}")


@dataclass(frozen=True)
class WarpResult:
    distance: float
    normalized_distance: float
    path: tuple  # ((i, j), ...), 1-based
    cells_visited: int = 0

    def score(self, normalize: bool = True) -> float:
        return self.normalized_distance if normalize else self.distance


def _as_sequence(x, name):
    data = getattr(x, "data", x)
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 1-D or 2-D, got {arr.ndim}-D")
    if arr.shape[0] == 0:
        raise EmptySequenceError(f"{name} is empty")
    return arr


def local_distance(q, c) -> float:
    """Sum of squared component differences."""
    q = np.atleast_1d(np.asarray(q, dtype=np.float64))
    c = np.atleast_1d(np.asarray(c, dtype=np.float64))
    if q.shape != c.shape or q.ndim != 1:
        raise DimensionMismatchError(f"vectors of dimension {q.shape} and {c.shape}")
    return float(kernels.sqdist(q[None, :], c[None, :])[0, 0])


def local_distance_matrix(Q, C) -> np.ndarray:
    Q = _as_sequence(Q, "Q")
    C = _as_sequence(C, "C")
    if Q.shape[1] != C.shape[1]:
        raise DimensionMismatchError(f"feature dimensions differ: {Q.shape[1]} vs {C.shape[1]}")
    return kernels.sqdist(Q, C)


def band_limits(n: int, m: int, radius: int | None):
    """Per-row inclusive column bounds (0-based) of the feasible band."""
    rows = np.arange(n, dtype=np.int64)
    if radius is None:
        return np.zeros(n, dtype=np.int64), np.full(n, m - 1, dtype=np.int64)
    w = max(int(radius), abs(n - m))
    return np.maximum(rows - w, 0), np.minimum(rows + w, m - 1)


@dataclass
class _Fill:
    dist: np.ndarray
    acc: np.ndarray  # n x m best cost per cell
    visits: int
    states: tuple | None = None  # (diag, vert, horiz) when slope-constrained


def _fill(Q, C, cfg: DtwConfig) -> _Fill:
    dist = local_distance_matrix(Q, C)
    n, m = dist.shape
    lo, hi = band_limits(n, m, cfg.band_radius_r)
    if cfg.max_run_S is None:
        acc, visits = kernels.accumulate(dist, lo, hi)
        return _Fill(dist, acc, int(visits))
    diag, vert, horiz, visits = kernels.accumulate_slope(dist, lo, hi, cfg.max_run_S)
    acc = np.minimum(diag, np.minimum(vert.min(axis=2), horiz.min(axis=2)))
    return _Fill(dist, acc, int(visits), (diag, vert, horiz))


def _backtrace(acc):
    i, j = acc.shape[0] - 1, acc.shape[1] - 1
    path = [(i, j)]
    while i > 0 or j > 0:
        best, step = math.inf, None
        if i > 0 and j > 0:
            best, step = acc[i - 1, j - 1], (i - 1, j - 1)
        if i > 0 and acc[i - 1, j] < best:
            best, step = acc[i - 1, j], (i - 1, j)
        if j > 0 and acc[i, j - 1] < best:
            best, step = acc[i, j - 1], (i, j - 1)
        i, j = step
        path.append(step)
    path.reverse()
    return path


def _best_state(states, i, j, allowed=(_DIAG, _VERT, _HORIZ)):
    """Lowest-cost state at a cell, preferring diag, then vertical, then
    horizontal, then shorter runs."""
    diag, vert, horiz = states
    best, choice = math.inf, None
    for kind in allowed:
        if kind == _DIAG:
            if diag[i, j] < best:
                best, choice = diag[i, j], (_DIAG, 0)
        else:
            runs = vert[i, j] if kind == _VERT else horiz[i, j]
            r = int(np.argmin(runs))
            if runs[r] < best:
                best, choice = runs[r], (kind, r)
    return choice


def _backtrace_slope(states):
    diag = states[0]
    i, j = diag.shape[0] - 1, diag.shape[1] - 1
    kind, run = _best_state(states, i, j)
    path = [(i, j)]
    while i > 0 or j > 0:
        if kind == _DIAG:
            i, j = i - 1, j - 1
            kind, run = _best_state(states, i, j)
        elif kind == _VERT:
            i -= 1
            if run > 0:
                run -= 1
            else:
                kind, run = _best_state(states, i, j, (_DIAG, _HORIZ))
        else:
            j -= 1
            if run > 0:
                run -= 1
            else:
                kind, run = _best_state(states, i, j, (_DIAG, _VERT))
        path.append((i, j))
    path.reverse()
    return path


def dtw_align(Q, C, cfg: DtwConfig | None = None) -> WarpResult:
    """Optimal warp between two sequences.

    Ties in the backtrace prefer the diagonal predecessor, then (i-1, j),
    then (i, j-1).
    """
    cfg = cfg or DtwConfig()
    fill = _fill(Q, C, cfg)
    n, m = fill.acc.shape
    total = float(fill.acc[n - 1, m - 1])
    if math.isinf(total):
        raise InfeasibleConstraintsError(
            f"no admissible path for n={n}, m={m} with band={cfg.band_radius_r}, max_run={cfg.max_run_S}"
        )
    raw = _backtrace(fill.acc) if fill.states is None else _backtrace_slope(fill.states)
    path = tuple((i + 1, j + 1) for i, j in raw)
    return WarpResult(total, total / (n + m), path, fill.visits)


def dtw_cost_matrix(Q, C, cfg: DtwConfig | None = None) -> np.ndarray:
    """Accumulated-cost matrix; ``inf`` marks cells no admissible path reaches."""
    cfg = cfg or DtwConfig()
    fill = _fill(Q, C, cfg)
    if math.isinf(fill.acc[-1, -1]):
        n, m = fill.acc.shape
        raise InfeasibleConstraintsError(
            f"no admissible path for n={n}, m={m} with band={cfg.band_radius_r}, max_run={cfg.max_run_S}"
        )
    return fill.acc
