import io
import struct
import subprocess
import sys

import numpy as np
import pytest

from mfccdtw.audio_io import ToneSpec, synthesize, write_wav
from mfccdtw.cli import main
from mfccdtw.dtw import local_distance
from mfccdtw.features import extract_features


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def tone_wav(tmp_path):
    path = tmp_path / "tone.wav"
    write_wav(synthesize(ToneSpec.tone(1000), 16000, 1.0, 0.5), path)
    return path


def write_rows(path, rows):
    path.write_text("".join(",".join(repr(float(v)) for v in row) + "\n" for row in rows))
    return path


def test_extract(tmp_path, tone_wav):
    out_csv = tmp_path / "f.csv"
    code, out, _ = run("extract", tone_wav, "--out", out_csv)
    assert code == 0 and out == "frames=158 dims=39\n"
    lines = out_csv.read_text().split("\n")
    assert lines[-1] == "" and len(lines) == 159
    assert all(len(line.split(",")) == 39 for line in lines[:-1])
    # CSV values round-trip to the in-memory features
    from mfccdtw.audio_io import read_wav
    ref = extract_features(read_wav(tone_wav)).data
    got = np.array([[float(v) for v in line.split(",")] for line in lines[:-1]])
    assert got.tobytes() == ref.tobytes()


def test_extract_errors(tmp_path, tone_wav):
    stereo = tmp_path / "st.wav"
    fmt = struct.pack("<HHIIHH", 1, 2, 16000, 64000, 4, 16)
    body = b"WAVEfmt " + struct.pack("<I", 16) + fmt + b"data" + struct.pack("<I", 4) + b"\0\0\0\0"
    stereo.write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)
    code, out, err = run("extract", stereo, "--out", tmp_path / "x.csv")
    assert code == 3 and "channels" in err and out == ""
    assert len(err.strip().split("\n")) == 1
    assert run("extract", tone_wav)[0] == 2
    assert run("extract", tone_wav, "--out", tmp_path / "x.csv", "--bogus")[0] == 2
    assert run("extract", tmp_path / "missing.wav", "--out", tmp_path / "x.csv")[0] == 3
    assert run("extract", tone_wav, "--out", tmp_path / "x.csv", "--rate", "8000")[0] == 3


def test_enroll_and_recognize(tmp_path):
    store = tmp_path / "store"
    a1, a2, b1 = tmp_path / "a1.wav", tmp_path / "a2.wav", tmp_path / "b1.wav"
    write_wav(synthesize(ToneSpec.parse("400,1600"), 16000, 0.5), a1)
    write_wav(synthesize(ToneSpec.parse("400,1600"), 16000, 0.6), a2)
    write_wav(synthesize(ToneSpec.parse("2500-600"), 16000, 0.5), b1)
    code, out, _ = run("enroll", "on_tv", a1, a2, "--store", store)
    assert code == 0 and out.split() == ["on_tv.1.tpl", "on_tv.2.tpl"]
    assert run("enroll", "off_tv", b1, "--store", store)[0] == 0

    code, out, _ = run("recognize", a2, "--store", store)
    lines = [line.split("\t") for line in out.strip().split("\n")]
    assert code == 0 and lines[0] == ["on_tv", "0.0"] and lines[1][0] == "off_tv"
    assert float(lines[1][1]) > 0

    code, out, _ = run("recognize", b1, "--store", store, "--top", "1", "--raw-distance", "--workers", "2")
    assert code == 0 and out == "off_tv\t0.0\n"

    code, _, err = run("enroll", "on_tv", a1, "--store", store, "--frame-len", "200")
    assert code == 3 and "fingerprint" in err
    assert run("recognize", a1, "--store", store, "--frame-len", "200")[0] == 3
    assert run("enroll", "on/tv", a1, "--store", store)[0] == 2


def test_recognize_empty_store(tmp_path, tone_wav):
    (tmp_path / "empty").mkdir()
    assert run("recognize", tone_wav, "--store", tmp_path / "empty")[0] == 4


def test_recognize_band_zero_is_diagonal_cost(tmp_path):
    store = tmp_path / "store"
    t, q = tmp_path / "t.wav", tmp_path / "q.wav"
    write_wav(synthesize(ToneSpec.parse("500,900"), 16000, 0.5), t)
    write_wav(synthesize(ToneSpec.parse("700,1300"), 16000, 0.5), q)
    run("enroll", "w", t, "--store", store)
    code, out, _ = run("recognize", q, "--store", store, "--band", "0", "--raw-distance")
    from mfccdtw.audio_io import read_wav
    ft, fq = extract_features(read_wav(t)).data, extract_features(read_wav(q)).data
    assert ft.shape == fq.shape
    diagonal = 0.0
    for i in range(ft.shape[0]):
        diagonal += local_distance(fq[i], ft[i])
    assert code == 0
    assert float(out.split("\t")[1]) == pytest.approx(diagonal, rel=1e-9)


def test_compare(tmp_path):
    a = write_rows(tmp_path / "a.csv", [[0], [1], [2]])
    b = write_rows(tmp_path / "b.csv", [[0], [2]])
    code, out, _ = run("compare", a, b)
    assert code == 0 and out == "distance=1.0 normalized=0.2 path_len=3\n"
    code, out, _ = run("compare", a, a)
    assert out.startswith("distance=0.0 ")
    w39 = write_rows(tmp_path / "w39.csv", np.zeros((3, 39)))
    w13 = write_rows(tmp_path / "w13.csv", np.zeros((3, 13)))
    assert run("compare", w39, w13)[0] == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3\n")
    assert run("compare", bad, bad)[0] == 3
    bad.write_text("1,x\n")
    assert run("compare", bad, bad)[0] == 3
    code, _, err = run("compare", write_rows(tmp_path / "one.csv", [[1.0]]),
                       write_rows(tmp_path / "five.csv", [[1.0]] * 5), "--max-run", "2")
    assert code == 3 and "no admissible path" in err


def test_export_plot(tmp_path, tone_wav):
    feats = tmp_path / "f.csv"
    run("extract", tone_wav, "--out", feats)
    code, _, _ = run("export-plot", "path", feats, feats, "--out", tmp_path / "p.csv")
    rows = (tmp_path / "p.csv").read_text().strip().split("\n")
    assert code == 0 and rows == [f"{i},{i}" for i in range(1, 159)]

    one = write_rows(tmp_path / "one.csv", [[1.0, 2.0]])
    two = write_rows(tmp_path / "two.csv", [[2.0, 4.0]])
    assert run("export-plot", "costmatrix", one, two, "--out", tmp_path / "c.csv")[0] == 0
    assert (tmp_path / "c.csv").read_text() == "5\n"

    banded = tmp_path / "banded.csv"
    long = write_rows(tmp_path / "long.csv", np.arange(12.0)[:, None])
    assert run("export-plot", "costmatrix", long, long, "--band", "2", "--out", banded)[0] == 0
    cells = [line.split(",") for line in banded.read_text().strip().split("\n")]
    assert cells[0][5] == "inf" and cells[0][0] == "0"

    assert run("export-plot", "mfcc", tone_wav, "--out", tmp_path / "m.csv")[0] == 0
    m = (tmp_path / "m.csv").read_text().strip().split("\n")
    assert len(m) == 158 and all(len(r.split(",")) == 39 for r in m)

    assert run("export-plot", "signal", tone_wav, "--out", tmp_path / "s.csv")[0] == 0
    s = (tmp_path / "s.csv").read_text().strip().split("\n")
    assert len(s) == 16000 and s[4] == "0.00025000000000000001,0.5"

    assert run("export-plot", "spectrum", tone_wav, "--out", tmp_path / "z.csv")[0] == 2
    assert run("export-plot", "path", feats, "--out", tmp_path / "z.csv")[0] == 2
    assert run("export-plot", "mfcc", tmp_path / "nope.wav", "--out", tmp_path / "z.csv")[0] == 3


def test_synth_command(tmp_path):
    out_wav = tmp_path / "s.wav"
    code, out, _ = run("synth", "1000", "--out", out_wav, "--duration", "0.5")
    assert code == 0 and out == "samples=8000 rate=16000\n"
    assert run("synth", "9000", "--out", out_wav)[0] == 3
    assert run("synth", "440", "--out", out_wav, "--snr", "20", "--seed", "3")[0] == 0


def test_determinism(tmp_path, tone_wav):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    r1 = run("extract", tone_wav, "--out", a)
    r2 = run("extract", tone_wav, "--out", b)
    assert r1 == r2 and a.read_bytes() == b.read_bytes()


def test_module_entry_point(tmp_path, tone_wav):
    proc = subprocess.run([sys.executable, "-m", "mfccdtw", "extract", str(tone_wav), "--out",
                           str(tmp_path / "f.csv")], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "frames=158 dims=39\n"
    proc = subprocess.run([sys.executable, "-m", "mfccdtw", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == ""
