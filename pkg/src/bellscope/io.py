"""File formats: coefficient matrices (JSON or CSV), tensors (JSON), ellipsoid export (CSV + JSON)."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .core import BellMatrix
from .errors import MalformedFileError, PreconditionError
from .multipartite import BellTensor
from .tightness import EllipsoidData


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedFileError(f"{path}: cannot read file: {exc.strerror}") from exc


def _load_json(path, text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFileError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def _real(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise MalformedFileError(f"{where}: expected a number, got {x!r}")
    if not math.isfinite(x):
        raise MalformedFileError(f"{where}: non-finite value")
    return float(x)


def _matrix_from_json(path, doc) -> BellMatrix:
    if not isinstance(doc, dict) or "g" not in doc:
        raise MalformedFileError(f'{path}: expected an object with key "g"')
    rows = doc["g"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise MalformedFileError(f'{path}: "g" must be a non-empty list of rows')
    width = len(rows[0])
    if width == 0:
        raise MalformedFileError(f"{path}: row 1 is empty")
    out = []
    for i, row in enumerate(rows, 1):
        if len(row) != width:
            raise MalformedFileError(f"{path}: row {i} has {len(row)} entries, expected {width} (ragged matrix)")
        out.append([_real(x, f"{path}: row {i}, column {j}") for j, x in enumerate(row, 1)])
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise MalformedFileError(f'{path}: "label" must be a string')
    return BellMatrix(np.array(out), label)


def _matrix_from_csv(path, text: str) -> BellMatrix:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or all(not c.strip() for c in row):
            continue
        vals = []
        for col, cell in enumerate(row, 1):
            try:
                val = float(cell)
            except ValueError:
                raise MalformedFileError(f"{path}:{lineno}:{col}: not a number: {cell.strip()!r}") from None
            if not math.isfinite(val):
                raise MalformedFileError(f"{path}:{lineno}:{col}: non-finite value")
            vals.append(val)
        if rows and len(vals) != len(rows[0]):
            raise MalformedFileError(f"{path}:{lineno}: {len(vals)} columns, expected {len(rows[0])}")
        rows.append(vals)
    if not rows:
        raise MalformedFileError(f"{path}: no data")
    return BellMatrix(np.array(rows))


def parse_matrix(path) -> BellMatrix:
    """Read ``{"g": [[...]], "label": ...}`` JSON or headerless CSV."""
    text = _read(path)
    if text.lstrip().startswith("{"):
        return _matrix_from_json(path, _load_json(path, text))
    return _matrix_from_csv(path, text)


def parse_tensor(path) -> BellTensor:
    """Read ``{"shape": [M1, ..., Mn], "coeffs": [...]}`` with x1 slowest."""
    text = _read(path)
    doc = _load_json(path, text)
    if not isinstance(doc, dict) or "shape" not in doc or "coeffs" not in doc:
        raise MalformedFileError(f'{path}: expected an object with keys "shape" and "coeffs"')
    shape, coeffs = doc["shape"], doc["coeffs"]
    if (
        not isinstance(shape, list)
        or len(shape) < 2
        or not all(isinstance(m, int) and not isinstance(m, bool) and m >= 1 for m in shape)
    ):
        raise MalformedFileError(f'{path}: "shape" must list at least two positive integers')
    if not isinstance(coeffs, list):
        raise MalformedFileError(f'{path}: "coeffs" must be a flat list')
    flat = [_real(x, f"{path}: coeffs[{i}]") for i, x in enumerate(coeffs)]
    if len(flat) != math.prod(shape):
        raise MalformedFileError(f"{path}: {len(flat)} coefficients, shape {shape} needs {math.prod(shape)}")
    try:
        return BellTensor.from_flat(shape, flat, doc.get("label"))
    except PreconditionError as exc:
        raise MalformedFileError(f"{path}: {exc}") from exc


def matrix_document(bm: BellMatrix) -> dict:
    doc = {"g": bm.g.tolist()}
    if bm.label is not None:
        doc["label"] = bm.label
    return doc


def tensor_document(t: BellTensor) -> dict:
    doc = {"shape": list(t.shape), "coeffs": t.flat().tolist()}
    if t.label is not None:
        doc["label"] = t.label
    return doc


def write_instance(obj, path) -> None:
    doc = tensor_document(obj) if isinstance(obj, BellTensor) else matrix_document(obj)
    Path(path).write_text(json.dumps(doc) + "\n", encoding="utf-8")


def quadric_path(csv_path) -> Path:
    return Path(csv_path).with_suffix(".json")


def write_ellipsoid(data: EllipsoidData, csv_path) -> Path:
    """Write ``set,index,c1..cd`` rows and the sidecar ``{"X": ...}``; returns the sidecar path."""
    d = data.points_v.shape[1]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["set", "index"] + [f"c{k}" for k in range(1, d + 1)])
    for name, pts in (("V", data.points_v), ("W", data.points_w)):
        for i, p in enumerate(pts, 1):
            writer.writerow([name, i] + [repr(float(x)) for x in p])
    Path(csv_path).write_text(buf.getvalue(), encoding="utf-8")
    side = quadric_path(csv_path)
    quad = None if data.quadric is None else data.quadric.tolist()
    side.write_text(json.dumps({"X": quad}) + "\n", encoding="utf-8")
    return side
