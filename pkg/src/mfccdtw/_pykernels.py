"""Pure-Python/numpy kernels.

Reference implementation and fallback for :mod:`mfccdtw._ckernels`. Both
modules perform floating-point operations in the same order, so their
results are bitwise identical.
"""

import math

import numpy as np

INF = math.inf


def fft_rows(re, im, tw_re, tw_im, rev):
    """In-place iterative radix-2 decimation-in-time FFT of every row.

    ``tw_re``/``tw_im`` hold ``exp(-2j*pi*k/n)`` for ``k < n/2`` and ``rev``
    the bit-reversal permutation of ``range(n)``.
    """
    t, n = re.shape
    re[:] = re[:, rev]
    im[:] = im[:, rev]
    half = 1
    while half < n:
        stride = n // (2 * half)
        wr = tw_re[::stride][:half]
        wi = tw_im[::stride][:half]
        r = re.reshape(t, stride, 2, half)
        i = im.reshape(t, stride, 2, half)
        ar = r[:, :, 0, :].copy()
        ai = i[:, :, 0, :].copy()
        br = r[:, :, 1, :]
        bi = i[:, :, 1, :]
        xr = br * wr - bi * wi
        xi = br * wi + bi * wr
        r[:, :, 0, :] = ar + xr
        i[:, :, 0, :] = ai + xi
        r[:, :, 1, :] = ar - xr
        i[:, :, 1, :] = ai - xi
        half *= 2


def sqdist(q, c):
    """Squared Euclidean distance between every row of ``q`` and ``c``,
    summed over dimensions in index order."""
    out = np.zeros((q.shape[0], c.shape[0]))
    for k in range(q.shape[1]):
        diff = q[:, k, None] - c[None, :, k]
        out += diff * diff
    return out


def accumulate(dist, lo, hi):
    """Fill the accumulated-cost matrix inside the band ``lo[i] <= j <= hi[i]``.

    Returns ``(acc, visits)``; cells outside the band hold ``inf``.
    """
    n, m = dist.shape
    acc = np.full((n, m), INF)
    rows = dist.tolist()
    lo = [int(v) for v in lo]
    hi = [int(v) for v in hi]
    visits = 0
    prev = [INF] * m
    for i in range(n):
        d = rows[i]
        cur = [INF] * m
        for j in range(lo[i], hi[i] + 1):
            if i == 0 and j == 0:
                best = 0.0
            else:
                best = INF
                if i > 0:
                    if j > 0 and prev[j - 1] < best:
                        best = prev[j - 1]
                    if prev[j] < best:
                        best = prev[j]
                if j > 0 and cur[j - 1] < best:
                    best = cur[j - 1]
            cur[j] = d[j] + best
        visits += hi[i] - lo[i] + 1
        acc[i] = cur
        prev = cur
    return acc, visits


def accumulate_slope(dist, lo, hi, max_run):
    """Banded fill with a bound on consecutive same-axis steps.

    State per cell: ``diag`` (entered diagonally, or the start cell),
    ``vert[..., r]`` / ``horiz[..., r]`` (entered by the (r+1)-th consecutive
    vertical / horizontal step, ``r < max_run``).
    """
    n, m = dist.shape
    s = int(max_run)
    rows = dist.tolist()
    none = [INF] * s
    diag = [[INF] * m for _ in range(n)]
    vert = [[none] * m for _ in range(n)]
    horiz = [[none] * m for _ in range(n)]
    visits = 0
    for i in range(n):
        d_row = rows[i]
        for j in range(int(lo[i]), int(hi[i]) + 1):
            d = d_row[j]
            if i == 0 and j == 0:
                diag[0][0] = d + 0.0
            if i > 0 and j > 0:
                best = diag[i - 1][j - 1]
                v = min(vert[i - 1][j - 1])
                if v < best:
                    best = v
                v = min(horiz[i - 1][j - 1])
                if v < best:
                    best = v
                diag[i][j] = d + best
            if i > 0:
                best = diag[i - 1][j]
                v = min(horiz[i - 1][j])
                if v < best:
                    best = v
                up = vert[i - 1][j]
                vert[i][j] = [d + best] + [d + up[r - 1] for r in range(1, s)]
            if j > 0:
                best = diag[i][j - 1]
                v = min(vert[i][j - 1])
                if v < best:
                    best = v
                left = horiz[i][j - 1]
                horiz[i][j] = [d + best] + [d + left[r - 1] for r in range(1, s)]
        visits += int(hi[i]) - int(lo[i]) + 1
    return np.array(diag), np.array(vert), np.array(horiz), visits
