"""Frequency-domain stages: FFT power spectrum, mel filterbank, log, DCT-II."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import (
    BadFftSizeError,
    DimensionMismatchError,
    NegativeFrequencyError,
    NegativeMelError,
    TooManyFiltersError,
)
from .frontend import FrameMatrix, FrontEndConfig


@lru_cache(maxsize=16)
def _fft_tables(n: int):
    k = np.arange(n // 2, dtype=np.float64)
    angle = 2.0 * np.pi * k / n
    bits = n.bit_length() - 1
    rev = np.array([int(format(i, f"0{bits}b")[::-1], 2) if bits else 0 for i in range(n)], dtype=np.intp)
    tw_re, tw_im = np.cos(angle), -np.sin(angle)
    for arr in (tw_re, tw_im, rev):
        arr.setflags(write=False)
    return tw_re, tw_im, rev


def fft(x, n: int | None = None):
    """Radix-2 FFT along the last axis of a real or complex 1-D/2-D array.

    Input rows are zero-padded to ``n`` (default: their length), which must
    be a power of two. Returns a complex array.
    """
    x = np.asarray(x)
    squeeze = x.ndim == 1
    x2 = np.atleast_2d(x)
    length = x2.shape[1]
    n = length if n is None else n
    if n <= 0 or n & (n - 1) or n < length:
        raise BadFftSizeError(f"FFT size {n} must be a power of two >= {length}")
    re = np.zeros((x2.shape[0], n))
    im = np.zeros((x2.shape[0], n))
    re[:, :length] = x2.real
    if np.iscomplexobj(x2):
        im[:, :length] = x2.imag
    tw_re, tw_im, rev = _fft_tables(n)
    re, im = kernels.fft_rows(re, im, tw_re, tw_im, rev)
    out = re + 1j * im
    return out[0] if squeeze else out


@dataclass(frozen=True)
class PowerSpectrum:
    bins: np.ndarray  # T x (fft_size/2 + 1)
    fft_size: int


def fft_power(frames: FrameMatrix | np.ndarray, fft_size: int) -> PowerSpectrum:
    """|X(k)|^2 for bins 0..fft_size/2 of every (zero-padded) frame."""
    data = frames.frames if isinstance(frames, FrameMatrix) else np.atleast_2d(np.asarray(frames, dtype=np.float64))
    if fft_size <= 0 or fft_size & (fft_size - 1) or fft_size < data.shape[1]:
        raise BadFftSizeError(f"FFT size {fft_size} must be a power of two >= frame length {data.shape[1]}")
    spec = fft(data, fft_size)[:, : fft_size // 2 + 1]
    return PowerSpectrum(spec.real ** 2 + spec.imag ** 2, fft_size)


def hz_to_mel(f_hz):
    """``2595 * log10(1 + f / 700)``; accepts scalars or arrays."""
    f = np.asarray(f_hz, dtype=np.float64)
    if np.any(f < 0):
        raise NegativeFrequencyError(f"negative frequency {f_hz}")
    mel = 2595.0 * np.log10(1.0 + f / 700.0)
    return float(mel) if mel.ndim == 0 else mel


def mel_to_hz(mel):
    m = np.asarray(mel, dtype=np.float64)
    if np.any(m < 0):
        raise NegativeMelError(f"negative mel value {mel}")
    hz = 700.0 * (10.0 ** (m / 2595.0) - 1.0)
    return float(hz) if hz.ndim == 0 else hz


@dataclass(frozen=True)
class MelFilterBank:
    num_filters: int
    fft_size: int
    sample_rate_hz: int
    weights: np.ndarray  # num_filters x (fft_size/2 + 1)
    edge_bins: np.ndarray  # num_filters + 2 FFT bin indices

    @property
    def center_bins(self) -> np.ndarray:
        return self.edge_bins[1:-1]

    @property
    def center_hz(self) -> np.ndarray:
        return self.center_bins * self.sample_rate_hz / self.fft_size


def build_filterbank(cfg: FrontEndConfig) -> MelFilterBank:
    """Triangular filters with apexes equally spaced in mel from 0 to fs/2.

    Each filter rises linearly from the previous edge bin to 1.0 at its own
    edge bin and falls back to zero at the next one.
    """
    nfilt, nfft, fs = cfg.num_filters, cfg.fft_size, cfg.sample_rate_hz
    if nfilt < 2:
        raise TooManyFiltersError(f"need at least 2 filters, got {nfilt}")
    mel_points = np.linspace(0.0, hz_to_mel(fs / 2.0), nfilt + 2)
    edges = np.floor((nfft + 1) * mel_to_hz(mel_points) / fs).astype(np.int64)
    collapsed = np.nonzero(np.diff(edges) <= 0)[0]
    if collapsed.size:
        raise TooManyFiltersError(
            f"{nfilt} filters on a {nfft}-point FFT at {fs} Hz: mel edges {collapsed[0]} and "
            f"{collapsed[0] + 1} share FFT bin {edges[collapsed[0]]}"
        )

    weights = np.zeros((nfilt, nfft // 2 + 1))
    for m in range(nfilt):
        left, center, right = edges[m], edges[m + 1], edges[m + 2]
        k = np.arange(left, center + 1)
        weights[m, left:center + 1] = (k - left) / (center - left)
        k = np.arange(center, right + 1)
        weights[m, center:right + 1] = (right - k) / (right - center)
    weights.setflags(write=False)
    edges.setflags(write=False)
    return MelFilterBank(nfilt, nfft, fs, weights, edges)


def apply_filterbank_log(power: PowerSpectrum | np.ndarray, fb: MelFilterBank, eps: float = 1e-10) -> np.ndarray:
    bins = power.bins if isinstance(power, PowerSpectrum) else np.atleast_2d(np.asarray(power, dtype=np.float64))
    if bins.shape[1] != fb.weights.shape[1]:
        raise DimensionMismatchError(
            f"power spectrum has {bins.shape[1]} bins, filterbank expects {fb.weights.shape[1]}"
        )
    return np.log(np.maximum(bins @ fb.weights.T, eps))


@lru_cache(maxsize=16)
def dct_matrix(n: int) -> np.ndarray:
    """Orthonormal DCT-II basis; row k is the k-th basis vector."""
    k = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    basis = np.cos(np.pi * k * (2 * j + 1) / (2 * n)) * math.sqrt(2.0 / n)
    basis[0] *= 1.0 / math.sqrt(2.0)
    basis.setflags(write=False)
    return basis


def dct_ii(x) -> np.ndarray:
    """Full orthonormal DCT-II along the last axis."""
    x = np.asarray(x, dtype=np.float64)
    return x @ dct_matrix(x.shape[-1]).T


def inverse_dct_ii(c) -> np.ndarray:
    c = np.asarray(c, dtype=np.float64)
    return c @ dct_matrix(c.shape[-1])


def dct_cepstra(log_mel, num_ceps: int) -> np.ndarray:
    """Coefficients c1..c_num_ceps of the orthonormal DCT-II of each row (c0 dropped)."""
    log_mel = np.atleast_2d(np.asarray(log_mel, dtype=np.float64))
    if not (0 < num_ceps < log_mel.shape[1]):
        raise DimensionMismatchError(
            f"cannot keep {num_ceps} cepstra from {log_mel.shape[1]} filter outputs"
        )
    return log_mel @ dct_matrix(log_mel.shape[1])[1:num_ceps + 1].T
