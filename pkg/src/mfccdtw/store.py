"""On-disk template store and nearest-template recognition.

A store is a directory of ``<label>.<k>.tpl`` text files::

    MFCCTPL 1
    label volume_up
    fingerprint a=0.95;N=256;M=100;fft=256;nfilt=26;nceps=12;fs=16000;eps=1e-10
    shape 158 39
    <158 lines of 39 numbers, 17 significant digits>

Concurrent writers to one directory are not supported.
"""

from __future__ import annotations

import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dtw import DtwConfig, dtw_align
from .errors import (
    CorruptTemplateError,
    FingerprintMismatchError,
    InvalidLabelError,
    IoFailureError,
    MissingFileError,
    MixedFingerprintsError,
    NoTemplatesError,
)
from .features import FeatureMatrix

MAGIC = "MFCCTPL 1"
SUFFIX = ".tpl"
_NAME_RE = re.compile(r"^(?P<label>.+)\.(?P<index>[1-9][0-9]*)\.tpl$")


def validate_label(label: str) -> str:
    if not isinstance(label, str) or not label:
        raise InvalidLabelError("label must be a non-empty string")
    if any(ch.isspace() for ch in label) or "/" in label or "\\" in label or os.sep in label:
        raise InvalidLabelError(f"label {label!r} contains whitespace or a path separator")
    if label in (".", ".."):
        raise InvalidLabelError(f"label {label!r} is reserved")
    return label


def format_number(x: float) -> str:
    return "%.17g" % x


@dataclass(frozen=True)
class Template:
    label: str
    features: FeatureMatrix
    index: int | None = None

    def __post_init__(self):
        validate_label(self.label)
        if not np.all(np.isfinite(self.features.data)):
            raise ValueError("template features must be finite")

    @property
    def config_fingerprint(self) -> str:
        return self.features.config_fingerprint


@dataclass
class Store:
    directory: Path
    templates: dict = field(default_factory=dict)  # label -> list[Template]
    fingerprint: str | None = None

    @property
    def labels(self) -> list[str]:
        return sorted(self.templates)

    def __len__(self):
        return sum(len(v) for v in self.templates.values())

    def __iter__(self):
        for label in self.labels:
            yield from self.templates[label]


def dumps_template(template: Template) -> str:
    data = template.features.data
    lines = [
        MAGIC,
        f"label {template.label}",
        f"fingerprint {template.config_fingerprint}",
        f"shape {data.shape[0]} {data.shape[1]}",
    ]
    lines.extend(" ".join(format_number(v) for v in row) for row in data.tolist())
    return "\n".join(lines) + "\n"


def read_template(path) -> Template:
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except UnicodeDecodeError:
        raise CorruptTemplateError(path, "not ASCII text") from None
    except OSError as exc:
        raise IoFailureError(f"cannot read {path}: {exc}") from exc

    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 4 or lines[0] != MAGIC:
        raise CorruptTemplateError(path, "bad magic line")
    if not lines[1].startswith("label "):
        raise CorruptTemplateError(path, "missing label line")
    if not lines[2].startswith("fingerprint "):
        raise CorruptTemplateError(path, "missing fingerprint line")
    label = lines[1][len("label "):]
    fingerprint = lines[2][len("fingerprint "):]
    shape = lines[3].split()
    try:
        if shape[0] != "shape" or len(shape) != 3:
            raise ValueError
        rows, cols = int(shape[1]), int(shape[2])
        if rows < 1 or cols < 1:
            raise ValueError
    except (ValueError, IndexError):
        raise CorruptTemplateError(path, f"bad shape line {lines[3]!r}") from None
    body = lines[4:]
    if len(body) != rows:
        raise CorruptTemplateError(path, f"expected {rows} data rows, found {len(body)}")

    data = np.empty((rows, cols))
    for t, line in enumerate(body):
        fields = line.split(" ")
        if len(fields) != cols:
            raise CorruptTemplateError(path, f"row {t + 1} has {len(fields)} fields, expected {cols}")
        try:
            data[t] = [float(v) for v in fields]
        except ValueError:
            raise CorruptTemplateError(path, f"row {t + 1} has a non-numeric field") from None
        if not all(math.isfinite(v) for v in data[t]):
            raise CorruptTemplateError(path, f"row {t + 1} has a non-finite value")

    try:
        validate_label(label)
    except InvalidLabelError as exc:
        raise CorruptTemplateError(path, str(exc)) from None
    m = _NAME_RE.match(path.name)
    if m is None or m.group("label") != label:
        raise CorruptTemplateError(path, f"file name does not match label {label!r}")
    return Template(label, FeatureMatrix(data, fingerprint), int(m.group("index")))


def load_store(directory) -> Store:
    """Read every ``*.tpl`` in ``directory``."""
    directory = Path(directory)
    if not directory.is_dir():
        raise MissingFileError(f"store directory {directory} does not exist")
    store = Store(directory)
    for path in sorted(directory.glob("*" + SUFFIX)):
        tpl = read_template(path)
        if store.fingerprint is None:
            store.fingerprint = tpl.config_fingerprint
        elif tpl.config_fingerprint != store.fingerprint:
            raise MixedFingerprintsError(
                f"{path} has fingerprint {tpl.config_fingerprint!r}, store uses {store.fingerprint!r}"
            )
        store.templates.setdefault(tpl.label, []).append(tpl)
    for tpls in store.templates.values():
        tpls.sort(key=lambda t: t.index)
    return store


def open_store(directory) -> Store:
    """Load a store, creating its directory when absent."""
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailureError(f"cannot create store {directory}: {exc}") from exc
    return load_store(directory)


def _next_index(directory: Path, label: str) -> int:
    used = [0]
    for path in directory.glob(glob_escape(label) + ".*" + SUFFIX):
        m = _NAME_RE.match(path.name)
        if m and m.group("label") == label:
            used.append(int(m.group("index")))
    return max(used) + 1


def glob_escape(text: str) -> str:
    return re.sub(r"([*?\[])", r"[\1]", text)


def save_template(store: Store, template: Template) -> Path:
    """Write ``template`` as ``<label>.<k>.tpl`` with the next free ``k``."""
    if store.fingerprint is not None and template.config_fingerprint != store.fingerprint:
        raise FingerprintMismatchError(
            f"template fingerprint {template.config_fingerprint!r} does not match store "
            f"fingerprint {store.fingerprint!r}"
        )
    index = _next_index(store.directory, template.label)
    path = store.directory / f"{template.label}.{index}{SUFFIX}"
    try:
        with open(path, "x", encoding="ascii", newline="\n") as fh:
            fh.write(dumps_template(template))
    except OSError as exc:
        raise IoFailureError(f"cannot write {path}: {exc}") from exc
    saved = Template(template.label, template.features, index)
    store.templates.setdefault(template.label, []).append(saved)
    store.fingerprint = template.config_fingerprint
    return path


@dataclass
class CellCounter:
    """Accumulates DTW cell visits across a recognition run."""

    cells: int = 0
    comparisons: int = 0


def recognize(store: Store, query: FeatureMatrix, cfg: DtwConfig | None = None, *,
              counter: CellCounter | None = None, workers: int | None = None):
    """Rank labels by their best template distance to ``query``.

    Returns ``[(label, distance), ...]`` ascending, ties broken by label. The
    distance is normalized unless ``cfg.normalize`` is false.
    """
    cfg = cfg or DtwConfig()
    if len(store) == 0:
        raise NoTemplatesError(f"store {store.directory} has no templates")
    if query.config_fingerprint != store.fingerprint:
        raise FingerprintMismatchError(
            f"query fingerprint {query.config_fingerprint!r} does not match store "
            f"fingerprint {store.fingerprint!r}"
        )
    templates = list(store)

    def compare(tpl):
        return dtw_align(query.data, tpl.features.data, cfg)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(compare, templates))
    else:
        results = [compare(t) for t in templates]

    best = {}
    for tpl, res in zip(templates, results):
        score = res.score(cfg.normalize)
        if tpl.label not in best or score < best[tpl.label]:
            best[tpl.label] = score
        if counter is not None:
            counter.cells += res.cells_visited
            counter.comparisons += 1
    return sorted(best.items(), key=lambda kv: (kv[1], kv[0]))
