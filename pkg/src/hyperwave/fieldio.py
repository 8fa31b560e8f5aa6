"""Field files and image ingestion.

HWF1 layout: an ASCII header ``HWF1 <KIND> <H> <W>\\n`` followed by
little-endian float64 planes in row-major order.  ``REAL`` stores one
plane, ``CPLX`` two (real, imaginary) and ``QUAT`` four ``(r, i, j, k)``.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .errors import FieldFormatError
from .grid_spectral import QuaternionField

MAGIC = b"HWF1"
PLANES = {"REAL": 1, "CPLX": 2, "QUAT": 4}
_DTYPE = np.dtype("<f8")


def _planes_of(field) -> tuple[str, np.ndarray]:
    if isinstance(field, QuaternionField):
        return "QUAT", field.data
    arr = np.asarray(field)
    if np.iscomplexobj(arr):
        if arr.ndim != 2:
            raise FieldFormatError("complex fields must be two-dimensional")
        return "CPLX", np.stack([arr.real, arr.imag])
    if arr.ndim == 2:
        return "REAL", arr[None]
    if arr.ndim == 3 and arr.shape[0] == 4:
        return "QUAT", arr
    raise FieldFormatError(f"cannot store an array of shape {arr.shape}")


def encode_field(field) -> bytes:
    kind, planes = _planes_of(field)
    h, w = planes.shape[1:]
    header = b"%s %s %d %d\n" % (MAGIC, kind.encode(), h, w)
    return header + np.ascontiguousarray(planes, dtype=_DTYPE).tobytes()


def decode_field(blob: bytes):
    """Inverse of :func:`encode_field`; returns an ndarray or QuaternionField."""
    nl = blob.find(b"\n")
    if nl < 0 or nl > 64:
        raise FieldFormatError("missing HWF1 header line")
    parts = blob[:nl].split(b" ")
    if len(parts) != 4 or parts[0] != MAGIC:
        raise FieldFormatError(f"bad header {blob[:nl]!r}")
    kind = parts[1].decode("ascii", "replace")
    if kind not in PLANES:
        raise FieldFormatError(f"unknown field kind {kind!r}")
    try:
        h, w = int(parts[2]), int(parts[3])
    except ValueError:
        raise FieldFormatError(f"bad dimensions in header {blob[:nl]!r}") from None
    if h <= 0 or w <= 0:
        raise FieldFormatError("dimensions must be positive")
    n = PLANES[kind]
    body = blob[nl + 1:]
    if len(body) != 8 * n * h * w:
        raise FieldFormatError(
            f"expected {8 * n * h * w} data bytes for {kind} {h}x{w}, found {len(body)}")
    planes = np.frombuffer(body, dtype=_DTYPE).reshape(n, h, w).astype(float)
    if kind == "REAL":
        return planes[0]
    if kind == "CPLX":
        return planes[0] + 1j * planes[1]
    return QuaternionField(planes)


def write_field(path, field) -> None:
    Path(path).write_bytes(encode_field(field))


def read_field(path):
    return decode_field(Path(path).read_bytes())


def _pgm_tokens(blob: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    tokens, pos = [], 0
    while len(tokens) < count:
        while pos < len(blob) and blob[pos:pos + 1].isspace():
            pos += 1
        if pos >= len(blob):
            raise FieldFormatError("truncated PGM header")
        if blob[pos:pos + 1] == b"#":
            end = blob.find(b"\n", pos)
            pos = len(blob) if end < 0 else end + 1
            continue
        start = pos
        while pos < len(blob) and not blob[pos:pos + 1].isspace():
            pos += 1
        tokens.append(blob[start:pos])
    return tokens, pos + 1  # exactly one whitespace byte ends the header


def decode_pgm(blob: bytes, demean: bool = True) -> np.ndarray:
    """Binary PGM (P5) with 8- or 16-bit samples, scaled to [0, 1].

    The mean is removed unless ``demean`` is false.
    """
    tokens, pos = _pgm_tokens(blob, 4)
    if tokens[0] != b"P5":
        raise FieldFormatError(f"only binary PGM (P5) is supported, got {tokens[0]!r}")
    try:
        w, h, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise FieldFormatError("bad PGM header numbers") from None
    if w <= 0 or h <= 0 or not 0 < maxval < 65536:
        raise FieldFormatError(f"unsupported PGM geometry {w}x{h}, maxval {maxval}")
    dtype = np.dtype("u1") if maxval < 256 else np.dtype(">u2")
    need = h * w * dtype.itemsize
    data = blob[pos:pos + need]
    if len(data) != need:
        raise FieldFormatError(f"PGM body holds {len(data)} bytes, expected {need}")
    img = np.frombuffer(data, dtype=dtype).reshape(h, w).astype(float) / maxval
    return img - img.mean() if demean else img


def encode_pgm(img: np.ndarray, maxval: int = 255) -> bytes:
    """Write an array of values in [0, 1] as binary PGM."""
    img = np.asarray(img, dtype=float)
    h, w = img.shape
    q = np.clip(np.rint(img * maxval), 0, maxval)
    dtype = np.dtype("u1") if maxval < 256 else np.dtype(">u2")
    return b"P5\n%d %d\n%d\n" % (w, h, maxval) + q.astype(dtype).tobytes()


def read_image(path, demean: bool = True):
    """Load a field for analysis: HWF1 REAL files or binary PGM."""
    blob = Path(path).read_bytes()
    if blob.startswith(MAGIC):
        field = decode_field(blob)
        if not isinstance(field, np.ndarray) or np.iscomplexobj(field):
            raise FieldFormatError("analysis input must be a REAL field")
        return field
    if blob.startswith(b"P"):
        return decode_pgm(blob, demean)
    raise FieldFormatError(f"{os.fspath(path)}: neither an HWF1 field nor a PGM image")
