"""MFCC feature extraction and dynamic-time-warping word recognition."""

from .audio_io import Segment, Signal, ToneSpec, add_noise, read_wav, synthesize, write_wav
from .dtw import DtwConfig, WarpResult, dtw_align, dtw_cost_matrix, local_distance
from .features import FeatureMatrix, delta, extract_features, frame_energy
from .frontend import FrameMatrix, FrontEndConfig, frame, hamming_window, preemphasize
from .kernels import backend_name
from .spectral import (
    MelFilterBank,
    PowerSpectrum,
    apply_filterbank_log,
    build_filterbank,
    dct_cepstra,
    fft_power,
    hz_to_mel,
    mel_to_hz,
)
from .store import CellCounter, Store, Template, load_store, open_store, recognize, save_template

__version__ = "0.1.0"

__all__ = [
    "CellCounter", "DtwConfig", "FeatureMatrix", "FrameMatrix", "FrontEndConfig", "MelFilterBank",
    "PowerSpectrum", "Segment", "Signal", "Store", "Template", "ToneSpec", "WarpResult",
    "add_noise", "apply_filterbank_log", "backend_name", "build_filterbank", "dct_cepstra", "delta",
    "dtw_align", "dtw_cost_matrix", "extract_features", "fft_power", "frame", "frame_energy",
    "hamming_window", "hz_to_mel", "load_store", "local_distance", "mel_to_hz", "open_store",
    "preemphasize", "read_wav", "recognize", "save_template", "synthesize", "write_wav",
]
