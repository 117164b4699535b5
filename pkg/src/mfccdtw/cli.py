"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 input/format/I-O error, 4 empty store.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import audio_io
from .dtw import DtwConfig, dtw_align, dtw_cost_matrix
from .errors import InvalidConfigError, InvalidLabelError, MfccDtwError, NoTemplatesError
from .features import extract_features
from .frontend import FrontEndConfig
from .store import Template, format_number, load_store, open_store, recognize, save_template, validate_label

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_EMPTY = 0, 2, 3, 4


class CliInputError(MfccDtwError):
    """Malformed CSV or other bad input file detected by the CLI itself."""


def _label(text):
    try:
        return validate_label(text)
    except InvalidLabelError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _pos_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_config_flags(p):
    d = FrontEndConfig()
    g = p.add_argument_group("front-end configuration")
    g.add_argument("--frame-len", type=_pos_int, default=d.frame_len_N, help="samples per frame (N)")
    g.add_argument("--frame-step", type=_pos_int, default=d.frame_step_M, help="hop between frames (M)")
    g.add_argument("--preemph", type=float, default=d.preemphasis_a, help="pre-emphasis coefficient")
    g.add_argument("--nfilt", type=_pos_int, default=d.num_filters, help="mel filters")
    g.add_argument("--nceps", type=_pos_int, default=d.num_ceps, help="cepstral coefficients kept")
    g.add_argument("--fft-size", type=_pos_int, default=None,
                   help="FFT length (default: 256, or the next power of two >= frame length)")
    g.add_argument("--rate", type=_pos_int, default=d.sample_rate_hz, help="expected sample rate in Hz")


def _add_dtw_flags(p):
    g = p.add_argument_group("DTW constraints")
    g.add_argument("--band", type=_nonneg_int, default=None, help="Sakoe-Chiba band radius r")
    g.add_argument("--max-run", type=_pos_int, default=None,
                   help="max consecutive steps along one axis (slope constraint)")
    g.add_argument("--raw-distance", action="store_true", help="rank by accumulated, not normalized, distance")


def _config(args) -> FrontEndConfig:
    fft = args.fft_size
    if fft is None:
        fft = 256
        while fft < args.frame_len:
            fft *= 2
    return FrontEndConfig(
        preemphasis_a=args.preemph, frame_len_N=args.frame_len, frame_step_M=args.frame_step,
        fft_size=fft, num_filters=args.nfilt, num_ceps=args.nceps, sample_rate_hz=args.rate,
    )


def _dtw_config(args) -> DtwConfig:
    return DtwConfig(band_radius_r=args.band, max_run_S=args.max_run, normalize=not args.raw_distance)


def write_csv(rows, path) -> None:
    rows = np.atleast_2d(rows)
    text = "".join(",".join("inf" if v == np.inf else format_number(v) for v in row) + "\n"
                   for row in rows.tolist())
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliInputError(f"cannot write {path}: {exc}") from exc


def read_feature_csv(path) -> np.ndarray:
    try:
        lines = Path(path).read_text(encoding="ascii").splitlines()
    except FileNotFoundError:
        raise CliInputError(f"no such file: {path}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    rows = []
    for k, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            rows.append([float(v) for v in line.split(",")])
        except ValueError:
            raise CliInputError(f"{path}: line {k} is not a row of numbers") from None
    if not rows:
        raise CliInputError(f"{path}: no data rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise CliInputError(f"{path}: rows have differing field counts")
    data = np.array(rows)
    if not np.all(np.isfinite(data)):
        raise CliInputError(f"{path}: non-finite value")
    return data


def _features_from(path, args) -> np.ndarray:
    if str(path).lower().endswith(".wav"):
        return extract_features(audio_io.read_wav(path), _config(args)).data
    return read_feature_csv(path)


def cmd_extract(args, out):
    feats = extract_features(audio_io.read_wav(args.wav), _config(args))
    write_csv(feats.data, args.out)
    print(f"frames={feats.num_frames} dims={feats.dims}", file=out)
    return EXIT_OK


def cmd_enroll(args, out):
    cfg = _config(args)
    store = open_store(args.store)
    feats = [extract_features(audio_io.read_wav(w), cfg) for w in args.wavs]
    for fm in feats:
        path = save_template(store, Template(args.label, fm))
        print(path.name, file=out)
    return EXIT_OK


def cmd_recognize(args, out):
    store = load_store(args.store)
    if len(store) == 0:
        raise NoTemplatesError(f"store {args.store} has no templates")
    query = extract_features(audio_io.read_wav(args.wav), _config(args))
    ranking = recognize(store, query, _dtw_config(args), workers=args.workers)
    if args.top is not None:
        ranking = ranking[: args.top]
    for label, dist in ranking:
        print(f"{label}\t{dist!r}", file=out)
    return EXIT_OK


def cmd_compare(args, out):
    a = read_feature_csv(args.a)
    b = read_feature_csv(args.b)
    res = dtw_align(a, b, _dtw_config(args))
    print(f"distance={res.distance!r} normalized={res.normalized_distance!r} path_len={len(res.path)}", file=out)
    return EXIT_OK


def cmd_synth(args, out):
    spec = audio_io.ToneSpec.parse(args.spec)
    sig = audio_io.synthesize(spec, args.rate, args.duration, args.amplitude)
    if args.snr is not None:
        sig = audio_io.add_noise(sig, args.snr, args.seed)
    audio_io.write_wav(sig, args.out)
    print(f"samples={len(sig)} rate={sig.sample_rate_hz}", file=out)
    return EXIT_OK


def cmd_export_plot(args, out):
    kind = args.kind
    need = 2 if kind in ("costmatrix", "path") else 1
    if len(args.inputs) != need:
        raise _UsageError(f"export-plot {kind} takes {need} input file(s), got {len(args.inputs)}")
    if kind == "signal":
        sig = audio_io.read_wav(args.inputs[0])
        t = np.arange(len(sig)) / sig.sample_rate_hz
        rows = np.column_stack((t, sig.samples))
    elif kind == "mfcc":
        rows = _features_from(args.inputs[0], args)
    else:
        q = _features_from(args.inputs[0], args)
        c = _features_from(args.inputs[1], args)
        if kind == "costmatrix":
            rows = dtw_cost_matrix(q, c, _dtw_config(args))
        else:
            rows = np.array(dtw_align(q, c, _dtw_config(args)).path)
            text = "".join(f"{i},{j}\n" for i, j in rows.tolist())
            try:
                Path(args.out).write_text(text, encoding="ascii")
            except OSError as exc:
                raise CliInputError(f"cannot write {args.out}: {exc}") from exc
            print(f"rows={len(rows)}", file=out)
            return EXIT_OK
    write_csv(rows, args.out)
    print(f"rows={rows.shape[0]} cols={rows.shape[1]}", file=out)
    return EXIT_OK


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfccdtw", description="MFCC features and DTW word recognition")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("extract", help="write the feature matrix of a WAV file as CSV")
    p.add_argument("wav")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("enroll", help="add WAV utterances of a word to a template store")
    p.add_argument("label", type=_label)
    p.add_argument("wavs", nargs="+")
    p.add_argument("--store", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_enroll)

    p = sub.add_parser("recognize", help="rank stored words against a WAV utterance")
    p.add_argument("wav")
    p.add_argument("--store", required=True)
    p.add_argument("--top", type=_pos_int, default=None)
    p.add_argument("--workers", type=_pos_int, default=None, help="parallel comparisons")
    _add_dtw_flags(p)
    _add_config_flags(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("compare", help="DTW between two feature CSV files")
    p.add_argument("a")
    p.add_argument("b")
    _add_dtw_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("synth", help="render a tone sequence to a WAV file")
    p.add_argument("spec", help='segments such as "440,880-1760/2" (Hz, chirp start-end, /weight)')
    p.add_argument("--out", required=True)
    p.add_argument("--rate", type=_pos_int, default=16000)
    p.add_argument("--duration", type=float, default=1.0, help="seconds")
    p.add_argument("--amplitude", type=float, default=0.5)
    p.add_argument("--snr", type=float, default=None, help="add white noise at this SNR (dB)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("export-plot", help="CSV data behind signal, MFCC, cost-matrix and path plots")
    p.add_argument("kind", choices=["signal", "mfcc", "costmatrix", "path"])
    p.add_argument("inputs", nargs="+", help="WAV for signal/mfcc; two feature CSVs or WAVs otherwise")
    p.add_argument("--out", required=True)
    _add_dtw_flags(p)
    _add_config_flags(p)
    p.set_defaults(func=cmd_export_plot)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (InvalidConfigError, _UsageError) as exc:
        print(f"mfccdtw {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    except NoTemplatesError as exc:
        print(f"mfccdtw {args.command}: error: {exc}", file=err)
        return EXIT_EMPTY
    except MfccDtwError as exc:
        print(f"mfccdtw {args.command}: error: {exc}", file=err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
