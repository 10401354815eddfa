"""JSON file formats shared by the CLI and the verifier reports.

MatrixFile::

    {"rows": 2, "cols": 2, "complex": false, "data": [1, 0, 0, 1]}

``data`` is row-major; with ``"complex": true`` each entry is a ``[re, im]``
pair. ChannelFile::

    {"in_dim": 2, "out_dim": 2, "kraus": [<MatrixFile>, ...]}

Floats are written with Python's shortest round-trip repr, so a value read
back is bit-identical to the one written.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ShapeError, StochentError
from .quantum import KrausChannel


class FormatError(StochentError, ValueError):
    """A document does not match the MatrixFile / ChannelFile schema."""


def encode_matrix(m) -> dict:
    m = np.asarray(m)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    is_complex = bool(np.iscomplexobj(m) and np.any(m.imag != 0.0))
    flat = m.reshape(-1)
    if is_complex:
        data = [[float(z.real), float(z.imag)] for z in flat]
    else:
        data = [float(x) for x in np.real(flat)]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "complex": is_complex, "data": data}


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FormatError(f"{where}: expected a number, got {x!r}")
    if not math.isfinite(x):
        raise FormatError(f"{where}: non-finite number")
    return float(x)


def decode_matrix(doc, where: str = "matrix") -> np.ndarray:
    """Parse a MatrixFile body. Nested lists of numbers are accepted as well."""
    if isinstance(doc, list):
        arr = np.array(doc, dtype=float) if doc else None
        if arr is None or arr.ndim not in (1, 2) or not np.all(np.isfinite(arr)):
            raise FormatError(f"{where}: expected a non-empty list or list of rows of finite numbers")
        return arr if arr.ndim == 2 else arr.reshape(-1, 1)
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object with rows/cols/complex/data")
    for key in ("rows", "cols", "data"):
        if key not in doc:
            raise FormatError(f"{where}: missing field '{key}'")
    rows, cols = doc["rows"], doc["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise FormatError(f"{where}: rows and cols must be positive integers")
    is_complex = doc.get("complex", False)
    if not isinstance(is_complex, bool):
        raise FormatError(f"{where}.complex: expected true or false")
    data = doc["data"]
    if not isinstance(data, list) or len(data) != rows * cols:
        raise FormatError(f"{where}.data: expected {rows * cols} entries")
    if is_complex:
        vals = []
        for i, z in enumerate(data):
            if not (isinstance(z, list) and len(z) == 2):
                raise FormatError(f"{where}.data[{i}]: expected a [re, im] pair")
            vals.append(complex(_number(z[0], f"{where}.data[{i}]"), _number(z[1], f"{where}.data[{i}]")))
        return np.array(vals, dtype=np.complex128).reshape(rows, cols)
    vals = [_number(x, f"{where}.data[{i}]") for i, x in enumerate(data)]
    return np.array(vals, dtype=float).reshape(rows, cols)


def decode_vector(doc, where: str = "vector") -> np.ndarray:
    m = decode_matrix(doc, where)
    if min(m.shape) != 1:
        raise FormatError(f"{where}: expected a vector, got a {m.shape[0]}x{m.shape[1]} matrix")
    return np.real_if_close(m.reshape(-1))


def encode_channel(phi: KrausChannel) -> dict:
    return {"in_dim": phi.in_dim, "out_dim": phi.out_dim,
            "kraus": [encode_matrix(m) for m in phi.kraus]}


def decode_channel(doc, where: str = "channel") -> KrausChannel:
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object with in_dim/out_dim/kraus")
    for key in ("in_dim", "out_dim", "kraus"):
        if key not in doc:
            raise FormatError(f"{where}: missing field '{key}'")
    in_dim, out_dim, kraus = doc["in_dim"], doc["out_dim"], doc["kraus"]
    if not (isinstance(in_dim, int) and isinstance(out_dim, int)) or in_dim < 1 or out_dim < 1:
        raise FormatError(f"{where}: in_dim and out_dim must be positive integers")
    if not isinstance(kraus, list) or not kraus:
        raise FormatError(f"{where}.kraus: expected a non-empty list")
    ops = []
    for i, k in enumerate(kraus):
        m = decode_matrix(k, f"{where}.kraus[{i}]")
        if m.shape != (out_dim, in_dim):
            raise FormatError(f"{where}.kraus[{i}]: shape {m.shape[0]}x{m.shape[1]}, expected {out_dim}x{in_dim}")
        ops.append(m)
    try:
        return KrausChannel(ops, in_dim, out_dim)
    except ShapeError as exc:
        raise FormatError(f"{where}: {exc}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def read_json(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None


def write_json(path, doc) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def read_matrix(path) -> np.ndarray:
    return decode_matrix(read_json(path), str(path))


def read_channel(path) -> KrausChannel:
    return decode_channel(read_json(path), str(path))
