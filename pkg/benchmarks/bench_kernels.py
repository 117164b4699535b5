"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Each case is timed per backend (best of ``--repeat`` runs) and the results
are checked for bitwise agreement.
"""

import argparse
import time

import numpy as np

from mfccdtw import kernels
from mfccdtw.dtw import DtwConfig, band_limits, dtw_align, local_distance_matrix
from mfccdtw.spectral import fft


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    rng = np.random.default_rng(0)
    q = rng.standard_normal((158, 39))
    c = rng.standard_normal((197, 39))
    frames = rng.standard_normal((158, 256))
    dist = local_distance_matrix(q, c)
    lo, hi = band_limits(*dist.shape, None)
    return [
        ("fill only", lambda: kernels.accumulate(dist, lo, hi)[0]),
        ("fill only, S=2", lambda: kernels.accumulate_slope(dist, lo, hi, 2)[0]),
        ("fft 158 x 256", lambda: fft(frames)),
        ("dtw 158 x 197", lambda: dtw_align(q, c).distance),
        ("dtw band r=20", lambda: dtw_align(q, c, DtwConfig(band_radius_r=20)).distance),
        ("dtw slope S=2", lambda: dtw_align(q, c, DtwConfig(max_run_S=2)).distance),
        ("dtw band+slope", lambda: dtw_align(q, c, DtwConfig(band_radius_r=20, max_run_S=3)).distance),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    names = kernels.available_backends()
    print(f"backends: {', '.join(names)}")
    header = f"{'case':<18}" + "".join(f"{n + ' (ms)':>16}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, fn in cases():
        times, outputs = [], []
        for name in names:
            with kernels.backend(name):
                t, out = best_time(fn, args.repeat)
            times.append(t)
            outputs.append(np.asarray(out))
        row = f"{label:<18}" + "".join(f"{1e3 * t:>16.2f}" for t in times)
        if len(names) == 2:
            python_t = times[names.index("python")]
            cython_t = times[names.index("cython")]
            row += f"{python_t / cython_t:>9.1f}x"
            if outputs[0].tobytes() != outputs[1].tobytes():
                row += "  MISMATCH"
        print(row)


if __name__ == "__main__":
    main()
