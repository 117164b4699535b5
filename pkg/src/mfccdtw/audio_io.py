"""16-bit mono PCM WAV input/output and deterministic test-signal synthesis."""

from __future__ import annotations

import math
import re
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    EmptySignalError,
    InvalidSpecError,
    IoFailureError,
    MissingFileError,
    NotWavError,
    TruncatedDataError,
    UnsupportedFormatError,
)

DECODE_SCALE = 32768.0
ENCODE_SCALE = 32767.0

WAVE_FORMAT_PCM = 1


@dataclass(frozen=True)
class Signal:
    """Mono sample sequence in [-1, 1] together with its sampling rate."""

    samples: np.ndarray
    sample_rate_hz: int

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64).reshape(-1)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        rate = int(self.sample_rate_hz)
        if rate <= 0 or rate != self.sample_rate_hz:
            raise InvalidSpecError(f"sample rate must be a positive integer, got {self.sample_rate_hz!r}")
        object.__setattr__(self, "sample_rate_hz", rate)

    def __len__(self):
        return self.samples.shape[0]

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz


def _iter_chunks(data: bytes):
    pos = 12
    while pos + 8 <= len(data):
        cid, size = struct.unpack_from("<4sI", data, pos)
        yield cid, pos + 8, size
        # chunks are word aligned
        pos += 8 + size + (size & 1)


def read_wav(path) -> Signal:
    """Decode a 16-bit mono PCM WAV file.

    Samples are the raw signed 16-bit values divided by 32768, so the
    result always lies in [-1, 1). Chunks other than ``fmt `` and ``data``
    are skipped.
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        raise MissingFileError(f"no such file: {path}") from None
    except IsADirectoryError:
        raise MissingFileError(f"not a file: {path}") from None
    except OSError as exc:
        raise IoFailureError(f"cannot read {path}: {exc}") from exc

    if len(data) < 12 or data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise NotWavError(f"{path}: missing RIFF/WAVE header")

    fmt = None
    pcm = None
    for cid, start, size in _iter_chunks(data):
        if cid == b"fmt ":
            if size < 16 or start + 16 > len(data):
                raise TruncatedDataError(f"{path}: fmt chunk too short")
            fmt = struct.unpack_from("<HHIIHH", data, start)
        elif cid == b"data":
            if fmt is None:
                raise NotWavError(f"{path}: data chunk precedes fmt chunk")
            available = len(data) - start
            if available < size:
                raise TruncatedDataError(
                    f"{path}: data chunk declares {size} bytes but only {available} present"
                )
            pcm = data[start:start + size]
            break

    if fmt is None:
        raise NotWavError(f"{path}: no fmt chunk")
    tag, channels, rate, _, _, bits = fmt
    if tag != WAVE_FORMAT_PCM:
        raise UnsupportedFormatError(f"{path}: format tag {tag} is not integer PCM")
    if channels != 1:
        raise UnsupportedFormatError(f"{path}: {channels} channels, only mono is supported")
    if bits != 16:
        raise UnsupportedFormatError(f"{path}: {bits} bits per sample, only 16 is supported")
    if rate <= 0:
        raise UnsupportedFormatError(f"{path}: sample rate {rate}")
    if pcm is None:
        raise TruncatedDataError(f"{path}: no data chunk")
    if len(pcm) % 2:
        raise TruncatedDataError(f"{path}: odd number of bytes in 16-bit data chunk")

    ints = np.frombuffer(pcm, dtype="<i2")
    return Signal(ints.astype(np.float64) / DECODE_SCALE, rate)


def encode_pcm16(samples) -> np.ndarray:
    """Scale by 32767, round half to even, clamp to the int16 range."""
    scaled = np.rint(np.asarray(samples, dtype=np.float64) * ENCODE_SCALE)
    return np.clip(scaled, -32768, 32767).astype("<i2")


def write_wav(signal: Signal, path) -> None:
    if len(signal) == 0:
        raise EmptySignalError("cannot write an empty signal")
    pcm = encode_pcm16(signal.samples).tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(pcm), b"WAVE",
        b"fmt ", 16, WAVE_FORMAT_PCM, 1, signal.sample_rate_hz,
        signal.sample_rate_hz * 2, 2, 16,
        b"data", len(pcm),
    )
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(pcm)
    except OSError as exc:
        raise IoFailureError(f"cannot write {path}: {exc}") from exc


@dataclass(frozen=True)
class Segment:
    """One piece of a tone sequence.

    A constant tone when ``end_hz`` is None, otherwise a linear chirp from
    ``start_hz`` to ``end_hz``. ``weight`` is the segment's share of the
    total duration relative to its siblings.
    """

    start_hz: float
    end_hz: float | None = None
    weight: float = 1.0


@dataclass(frozen=True)
class ToneSpec:
    segments: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @classmethod
    def tone(cls, freq_hz: float) -> "ToneSpec":
        return cls((Segment(freq_hz),))

    @classmethod
    def parse(cls, text: str) -> "ToneSpec":
        """Parse ``"440,880-1760/2,300"``: comma-separated segments, each a
        frequency or ``start-end`` chirp, optionally ``/weight``."""
        segs = []
        pattern = re.compile(r"^\s*([0-9.]+)(?:\s*-\s*([0-9.]+))?(?:\s*/\s*([0-9.]+))?\s*$")
        for part in text.split(","):
            m = pattern.match(part)
            if not m:
                raise InvalidSpecError(f"bad segment {part!r} in tone spec {text!r}")
            try:
                start = float(m.group(1))
                end = float(m.group(2)) if m.group(2) else None
                weight = float(m.group(3)) if m.group(3) else 1.0
            except ValueError:
                raise InvalidSpecError(f"bad number in segment {part!r}") from None
            segs.append(Segment(start, end, weight))
        return cls(tuple(segs))


def synthesize(spec: ToneSpec | Sequence[Segment], sample_rate_hz: int, duration_s: float,
               amplitude: float = 0.5) -> Signal:
    """Render a tone sequence as a phase-continuous sinusoid.

    The total length is ``round(duration_s * sample_rate_hz)`` samples, split
    across the segments in proportion to their weights.
    """
    segments = tuple(spec.segments if isinstance(spec, ToneSpec) else spec)
    if not segments:
        raise InvalidSpecError("tone spec has no segments")
    if not (duration_s > 0) or not math.isfinite(duration_s):
        raise InvalidSpecError(f"duration must be positive, got {duration_s}")
    if sample_rate_hz <= 0:
        raise InvalidSpecError(f"sample rate must be positive, got {sample_rate_hz}")
    if not (0.0 <= amplitude <= 1.0):
        raise InvalidSpecError(f"amplitude must lie in [0, 1], got {amplitude}")
    nyquist = sample_rate_hz / 2
    for seg in segments:
        for f in (seg.start_hz, seg.end_hz):
            if f is not None and not (0 <= f < nyquist):
                raise InvalidSpecError(f"frequency {f} Hz outside [0, {nyquist}) Hz")
        if not (seg.weight > 0):
            raise InvalidSpecError(f"segment weight must be positive, got {seg.weight}")

    total = int(round(duration_s * sample_rate_hz))
    if total < 1:
        raise InvalidSpecError(f"duration {duration_s} s yields no samples at {sample_rate_hz} Hz")
    weights = np.array([s.weight for s in segments], dtype=np.float64)
    bounds = np.rint(np.concatenate(([0.0], np.cumsum(weights))) / weights.sum() * total).astype(int)

    out = np.empty(total, dtype=np.float64)
    phase0 = 0.0
    for seg, lo, hi in zip(segments, bounds[:-1], bounds[1:]):
        count = hi - lo
        if count <= 0:
            continue
        t = np.arange(count, dtype=np.float64) / sample_rate_hz
        f0 = seg.start_hz
        f1 = f0 if seg.end_hz is None else seg.end_hz
        span = count / sample_rate_hz
        phase = phase0 + 2.0 * np.pi * (f0 * t + 0.5 * (f1 - f0) / span * t * t)
        out[lo:hi] = amplitude * np.sin(phase)
        phase0 = math.fmod(phase0 + 2.0 * math.pi * (f0 * span + 0.5 * (f1 - f0) * span), 2.0 * math.pi)
    return Signal(out, sample_rate_hz)


def add_noise(signal: Signal, snr_db: float, seed: int) -> Signal:
    """Add white Gaussian noise at the requested SNR, clipping to [-1, 1]."""
    rng = np.random.default_rng(seed)
    power = float(np.mean(signal.samples ** 2))
    noise = rng.standard_normal(len(signal)) * math.sqrt(power / 10.0 ** (snr_db / 10.0))
    return Signal(np.clip(signal.samples + noise, -1.0, 1.0), signal.sample_rate_hz)
