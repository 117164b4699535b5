"""Independent reference computations used only by the tests."""

import cmath
import math

import numpy as np


def direct_dft(x):
    n = len(x)
    return np.array([sum(x[t] * cmath.exp(-2j * math.pi * k * t / n) for t in range(n)) for k in range(n)])


def monotone_paths(n, m):
    """Every boundary-to-boundary path with steps (1,1), (1,0), (0,1), 0-based."""
    def walk(i, j, acc):
        if (i, j) == (n - 1, m - 1):
            yield list(acc)
            return
        for di, dj in ((1, 1), (1, 0), (0, 1)):
            a, b = i + di, j + dj
            if a < n and b < m:
                acc.append((a, b))
                yield from walk(a, b, acc)
                acc.pop()
    yield from walk(0, 0, [(0, 0)])


def max_axis_run(path):
    longest = run = 0
    last = None
    for (i0, j0), (i1, j1) in zip(path, path[1:]):
        kind = (i1 - i0, j1 - j0)
        if kind == (1, 1):
            run, last = 0, None
            continue
        run = run + 1 if kind == last else 1
        last = kind
        longest = max(longest, run)
    return longest


def brute_force_dtw(q, c, band=None, max_run=None):
    """Minimum path cost by exhaustive enumeration; inf if no path qualifies."""
    q = np.asarray(q, dtype=float).reshape(len(q), -1).tolist()
    c = np.asarray(c, dtype=float).reshape(len(c), -1).tolist()
    n, m = len(q), len(c)
    d = [[sum((a - b) ** 2 for a, b in zip(qi, cj)) for cj in c] for qi in q]
    w = None if band is None else max(band, abs(n - m))
    best = math.inf
    for path in monotone_paths(n, m):
        if w is not None and any(abs(i - j) > w for i, j in path):
            continue
        if max_run is not None and max_axis_run(path) > max_run:
            continue
        cost = sum(d[i][j] for i, j in path)
        best = min(best, cost)
    return best
