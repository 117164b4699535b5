import subprocess
import sys

import numpy as np
import pytest

from mfccdtw import _pykernels, kernels
from mfccdtw.dtw import band_limits
from mfccdtw.spectral import _fft_tables

needs_ext = pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")


def test_default_backend_prefers_compiled():
    expected = "cython" if "cython" in kernels.available_backends() else "python"
    assert kernels.backend_name() == expected


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@needs_ext
@pytest.mark.parametrize("n", [1, 2, 8, 256])
def test_fft_bitwise_parity(n):
    from mfccdtw import _ckernels
    rng = np.random.default_rng(n)
    re, im = rng.standard_normal((4, n)), rng.standard_normal((4, n))
    tables = _fft_tables(n)
    a_re, a_im = re.copy(), im.copy()
    b_re, b_im = re.copy(), im.copy()
    _pykernels.fft_rows(a_re, a_im, *tables)
    _ckernels.fft_rows(b_re, b_im, *tables)
    assert a_re.tobytes() == b_re.tobytes() and a_im.tobytes() == b_im.tobytes()


@needs_ext
@pytest.mark.parametrize("radius", [None, 0, 3])
@pytest.mark.parametrize("max_run", [None, 1, 2, 5])
def test_dtw_bitwise_parity(radius, max_run):
    from mfccdtw import _ckernels
    rng = np.random.default_rng(17)
    for n, m in ((1, 1), (1, 4), (6, 3), (17, 23)):
        dist = rng.uniform(0, 10, (n, m))
        lo, hi = band_limits(n, m, radius)
        if max_run is None:
            a = _pykernels.accumulate(dist, lo, hi)
            b = _ckernels.accumulate(dist, lo, hi)
        else:
            a = _pykernels.accumulate_slope(dist, lo, hi, max_run)
            b = _ckernels.accumulate_slope(dist, lo, hi, max_run)
        assert a[-1] == b[-1]
        for x, y in zip(a[:-1], b[:-1]):
            assert x.shape == y.shape and x.tobytes() == y.tobytes()


@needs_ext
def test_sqdist_bitwise_parity():
    from mfccdtw import _ckernels
    rng = np.random.default_rng(3)
    q, c = rng.standard_normal((13, 39)), rng.standard_normal((17, 39))
    assert _pykernels.sqdist(q, c).tobytes() == _ckernels.sqdist(q, c).tobytes()


def test_fallback_when_extension_missing():
    code = (
        "import sys; sys.modules['mfccdtw._ckernels'] = None\n"
        "import mfccdtw\n"
        "from mfccdtw import kernels\n"
        "assert kernels.available_backends() == ['python'], kernels.available_backends()\n"
        "sig = mfccdtw.synthesize(mfccdtw.ToneSpec.tone(440), 16000, 1.0)\n"
        "print(kernels.backend_name(), mfccdtw.extract_features(sig).shape)\n"
    )
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "python (158, 39)"
