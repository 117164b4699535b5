"""Time-domain conditioning: pre-emphasis, framing and Hamming windowing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_io import Signal
from .errors import EmptySignalError, InvalidConfigError


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class FrontEndConfig:
    """Every constant of the feature pipeline.

    The defaults reproduce the classic setup: a = 0.95, 256-sample frames
    with a 100-sample hop, 256-point FFT, 26 mel filters, 12 cepstra, 16 kHz.
    """

    preemphasis_a: float = 0.95
    frame_len_N: int = 256
    frame_step_M: int = 100
    fft_size: int = 256
    num_filters: int = 26
    num_ceps: int = 12
    sample_rate_hz: int = 16000
    log_floor_eps: float = 1e-10

    def __post_init__(self):
        problems = []
        if not (0.0 <= self.preemphasis_a < 1.0):
            problems.append(f"preemphasis_a={self.preemphasis_a} not in [0, 1)")
        for name in ("frame_len_N", "frame_step_M", "fft_size", "num_filters", "num_ceps", "sample_rate_hz"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value <= 0:
                problems.append(f"{name}={value!r} must be a positive integer")
        if problems:
            raise InvalidConfigError("; ".join(problems))
        if self.frame_step_M > self.frame_len_N:
            problems.append(f"frame step {self.frame_step_M} exceeds frame length {self.frame_len_N}")
        if self.frame_len_N < 2:
            problems.append("frame length must be at least 2")
        if not _is_pow2(self.fft_size) or self.fft_size < self.frame_len_N:
            problems.append(f"fft_size={self.fft_size} must be a power of two >= frame length {self.frame_len_N}")
        if self.num_ceps >= self.num_filters:
            problems.append(f"num_ceps={self.num_ceps} must be below num_filters={self.num_filters}")
        if not (self.log_floor_eps > 0):
            problems.append(f"log_floor_eps={self.log_floor_eps} must be positive")
        if problems:
            raise InvalidConfigError("; ".join(problems))

    @property
    def num_features(self) -> int:
        return 3 * (self.num_ceps + 1)

    def fingerprint(self) -> str:
        """Canonical text form; two configs are equal iff their fingerprints are."""
        return (
            f"a={float(self.preemphasis_a)!r};N={self.frame_len_N};M={self.frame_step_M};"
            f"fft={self.fft_size};nfilt={self.num_filters};nceps={self.num_ceps};"
            f"fs={self.sample_rate_hz};eps={float(self.log_floor_eps)!r}"
        )

    @classmethod
    def from_fingerprint(cls, text: str) -> "FrontEndConfig":
        names = {"a": ("preemphasis_a", float), "N": ("frame_len_N", int), "M": ("frame_step_M", int),
                 "fft": ("fft_size", int), "nfilt": ("num_filters", int), "nceps": ("num_ceps", int),
                 "fs": ("sample_rate_hz", int), "eps": ("log_floor_eps", float)}
        kwargs = {}
        try:
            for item in text.strip().split(";"):
                key, value = item.split("=", 1)
                field_name, conv = names[key]
                kwargs[field_name] = conv(value)
        except (KeyError, ValueError):
            raise InvalidConfigError(f"malformed config fingerprint {text!r}") from None
        if len(kwargs) != len(names):
            raise InvalidConfigError(f"incomplete config fingerprint {text!r}")
        cfg = cls(**kwargs)
        if cfg.fingerprint() != text.strip():
            raise InvalidConfigError(f"non-canonical config fingerprint {text!r}")
        return cfg


@dataclass(frozen=True)
class FrameMatrix:
    frames: np.ndarray  # T x N
    config: FrontEndConfig

    @property
    def num_frames(self) -> int:
        return self.frames.shape[0]


def preemphasize(signal: Signal, a: float = 0.95) -> Signal:
    """First-order high-pass ``y[n] = x[n] - a*x[n-1]`` with ``x[-1] = 0``."""
    x = signal.samples
    if x.size == 0:
        raise EmptySignalError("cannot pre-emphasize an empty signal")
    y = np.empty_like(x)
    y[0] = x[0]
    y[1:] = x[1:] - a * x[:-1]
    return Signal(y, signal.sample_rate_hz)


def num_frames(length: int, frame_len: int, frame_step: int) -> int:
    """Frame count after zero-padding short signals to one frame and
    dropping the trailing partial frame."""
    if length <= 0:
        raise EmptySignalError("signal has no samples")
    return (max(length, frame_len) - frame_len) // frame_step + 1


def frame(signal: Signal, cfg: FrontEndConfig) -> FrameMatrix:
    x = signal.samples
    if x.size == 0:
        raise EmptySignalError("cannot frame an empty signal")
    n, m = cfg.frame_len_N, cfg.frame_step_M
    if x.size < n:
        x = np.concatenate((x, np.zeros(n - x.size)))
    count = num_frames(x.size, n, m)
    idx = np.arange(count)[:, None] * m + np.arange(n)[None, :]
    return FrameMatrix(x[idx], cfg)


def hamming(n: int) -> np.ndarray:
    """Symmetric Hamming window ``0.54 - 0.46 cos(2 pi k / (n - 1))``."""
    if n < 2:
        raise InvalidConfigError("Hamming window needs at least 2 points")
    k = np.arange((n + 1) // 2, dtype=np.float64)
    half = 0.54 - 0.46 * np.cos(2.0 * np.pi * k / (n - 1))
    # mirrored so w[k] == w[n-1-k] holds exactly
    return np.concatenate((half, half[: n // 2][::-1]))


def hamming_window(frames: FrameMatrix) -> FrameMatrix:
    w = hamming(frames.frames.shape[1])
    return FrameMatrix(frames.frames * w[None, :], frames.config)
