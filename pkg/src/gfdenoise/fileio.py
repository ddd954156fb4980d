"""Feature-file formats and report emission.

Text format: one `label,v1,...,vd` row per line, `#` lines are comments,
values written with 17 significant digits so float64 round-trips exactly.

Binary format (all integers little-endian):

    offset  size      content
    0       8         magic "GFDENSE1"
    8       8         n, row count (u64)
    16      8         d, feature dimension (u64)
    24      4         label_width, bytes per label record (u32)
    28      n*width   labels, ASCII zero-padded to label_width
    ...     n*d*8     features, IEEE-754 float64, row-major

Reports are JSON documents; emit_report/load_report round-trip floats
exactly.
"""

import json
import struct

import numpy as np

from .data import LabeledFeatures
from .errors import BadMagic, InconsistentDimension, ParseError, TruncatedFile

MAGIC = b"GFDENSE1"
_HEADER = struct.Struct("<8sQQI")


def load_features_text(path) -> LabeledFeatures:
    """Parse a comma-separated feature file; row order is preserved and
    labels stay opaque strings."""
    labels, rows, dim = [], [], None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) < 2:
                raise ParseError(lineno, f"line {lineno}: expected label,v1,...,vd")
            try:
                values = [float(p) for p in parts[1:]]
            except ValueError:
                raise ParseError(lineno, f"line {lineno}: non-numeric feature value")
            if dim is None:
                dim = len(values)
            elif len(values) != dim:
                raise InconsistentDimension(
                    lineno, f"line {lineno}: {len(values)} values, expected {dim}"
                )
            labels.append(parts[0])
            rows.append(values)
    if not rows:
        raise ParseError(0, "no data lines in file")
    return LabeledFeatures(features=np.asarray(rows), labels=np.asarray(labels))


def save_features_text(path, data: LabeledFeatures) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for label, row in zip(data.labels, data.features):
            label = str(label)
            if "," in label or label.startswith("#"):
                raise ValueError(f"label {label!r} not representable in text format")
            fh.write(label + "," + ",".join(f"{v:.17g}" for v in row) + "\n")


def save_features_binary(path, data: LabeledFeatures) -> None:
    encoded = [str(label).encode("ascii") for label in data.labels]
    width = max([len(b) for b in encoded] or [1])
    width = max(width, 1)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, data.n, data.d, width))
        for b in encoded:
            fh.write(b.ljust(width, b"\0"))
        fh.write(np.ascontiguousarray(data.features, dtype="<f8").tobytes())


def load_features_binary(path) -> LabeledFeatures:
    """Read the binary format; bit-exact inverse of save_features_binary."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) < _HEADER.size:
            raise TruncatedFile(f"header is {len(header)} bytes, need {_HEADER.size}")
        magic, n, d, width = _HEADER.unpack(header)
        if magic != MAGIC:
            raise BadMagic(f"bad magic {magic!r}, expected {MAGIC!r}")
        label_block = fh.read(n * width)
        if len(label_block) < n * width:
            raise TruncatedFile("label block shorter than header implies")
        payload = fh.read(n * d * 8)
        if len(payload) < n * d * 8:
            raise TruncatedFile("feature payload shorter than header implies")
        if fh.read(1):
            raise TruncatedFile("trailing bytes after feature payload")
    labels = [
        label_block[i * width : (i + 1) * width].rstrip(b"\0").decode("ascii")
        for i in range(n)
    ]
    features = np.frombuffer(payload, dtype="<f8").reshape(n, d).copy()
    return LabeledFeatures(features=features, labels=np.asarray(labels))


def load_features(path, fmt: str) -> LabeledFeatures:
    return load_features_binary(path) if fmt == "bin" else load_features_text(path)


def save_features(path, data: LabeledFeatures, fmt: str) -> None:
    if fmt == "bin":
        save_features_binary(path, data)
    else:
        save_features_text(path, data)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def emit_report(report: dict, path) -> None:
    """Write a report document as JSON (numpy scalars/arrays converted)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(report), fh, indent=2, sort_keys=True)
        fh.write("\n")


def report_text(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True)


def load_report(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
