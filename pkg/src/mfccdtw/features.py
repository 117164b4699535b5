"""39-dimensional feature vectors: 12 cepstra + log energy, deltas, double deltas."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_io import Signal
from .errors import DimensionMismatchError, SampleRateMismatchError
from .frontend import FrameMatrix, FrontEndConfig, frame, hamming_window, preemphasize
from .spectral import apply_filterbank_log, build_filterbank, dct_cepstra, fft_power


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """T x D feature rows.

    Column layout for D = 3 * (C + 1): ``[0, C)`` cepstra c1..cC, ``C`` log
    energy, then the deltas of those C + 1 columns, then their double deltas.
    """

    data: np.ndarray
    config_fingerprint: str

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64, copy=True)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise DimensionMismatchError(f"feature matrix must be non-empty 2-D, got shape {data.shape}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def num_frames(self) -> int:
        return self.data.shape[0]

    @property
    def dims(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __eq__(self, other):
        if not isinstance(other, FeatureMatrix):
            return NotImplemented
        return (self.config_fingerprint == other.config_fingerprint
                and self.data.shape == other.data.shape
                and bool(np.array_equal(self.data, other.data)))

    __hash__ = None


def frame_energy(frame_samples, eps: float = 1e-10) -> float:
    """Log of the summed squared samples, floored at ``eps``."""
    x = np.asarray(frame_samples, dtype=np.float64)
    return float(np.log(max(float(np.dot(x, x)), eps)))


def delta(stream) -> np.ndarray:
    """Central difference ``(c[t+1] - c[t-1]) / 2`` along axis 0 with
    replicated edge rows."""
    c = np.atleast_2d(np.asarray(stream, dtype=np.float64))
    if c.shape[0] == 0:
        raise DimensionMismatchError("delta of an empty stream")
    padded = np.concatenate((c[:1], c, c[-1:]), axis=0)
    return (padded[2:] - padded[:-2]) / 2.0


@dataclass(frozen=True)
class Analysis:
    """Intermediate products of one feature extraction."""

    frames: FrameMatrix
    log_energy: np.ndarray
    power: np.ndarray
    log_mel: np.ndarray
    cepstra: np.ndarray
    features: FeatureMatrix


def analyze(signal: Signal, cfg: FrontEndConfig | None = None) -> Analysis:
    cfg = cfg or FrontEndConfig()
    if signal.sample_rate_hz != cfg.sample_rate_hz:
        raise SampleRateMismatchError(
            f"signal sampled at {signal.sample_rate_hz} Hz, configuration expects {cfg.sample_rate_hz} Hz"
        )
    emphasized = preemphasize(signal, cfg.preemphasis_a)
    raw = frame(emphasized, cfg)
    # energy is taken before the Hamming taper
    energy = np.array([frame_energy(f, cfg.log_floor_eps) for f in raw.frames])
    windowed = hamming_window(raw)
    power = fft_power(windowed, cfg.fft_size)
    log_mel = apply_filterbank_log(power, build_filterbank(cfg), cfg.log_floor_eps)
    ceps = dct_cepstra(log_mel, cfg.num_ceps)
    base = np.column_stack((ceps, energy))
    d1 = delta(base)
    d2 = delta(d1)
    feats = FeatureMatrix(np.hstack((base, d1, d2)), cfg.fingerprint())
    return Analysis(raw, energy, power.bins, log_mel, ceps, feats)


def extract_features(signal: Signal, cfg: FrontEndConfig | None = None) -> FeatureMatrix:
    """Pre-emphasis through double deltas; ``T x 3*(num_ceps+1)``."""
    return analyze(signal, cfg).features
