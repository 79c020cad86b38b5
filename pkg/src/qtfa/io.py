"""Reading and writing complex matrices, and magnitude heatmaps.

Text format::

    # qtfa-complex v1, 3, 2
    1.0+0.0i,0.5-2.0i
    ...

Binary format: the 8-byte magic ``QTFAC1\\0\\0``, rows and cols as little-endian
u32, then row-major little-endian f64 pairs (re, im).  All writers go through a
temporary file in the target directory followed by an atomic rename.
"""

from __future__ import annotations

import os
import re
import struct
import tempfile
from pathlib import Path

import numpy as np

from .errors import FormatError

MAGIC = b"QTFAC1\0\0"
_HEADER = re.compile(r"^#\s*qtfa-complex\s+v1\s*,\s*(\d+)\s*,\s*(\d+)\s*$")


def atomic_write(path, data: bytes) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim == 1:
        return A[None, :]
    if A.ndim == 2:
        return A
    if A.ndim == 4 and len(set(A.shape)) == 1:
        n = A.shape[0]
        return A.reshape(n * n, n * n)
    raise FormatError(f"cannot store an array of shape {A.shape}")


def format_cell(v: complex) -> str:
    re_, im = repr(float(v.real)), repr(float(v.imag))
    sign = "" if im.startswith("-") else "+"
    return f"{re_}{sign}{im}i"


def parse_cell(text: str) -> complex:
    t = text.strip()
    if not t.endswith("i"):
        raise ValueError(f"missing imaginary unit in {text!r}")
    return complex(t[:-1] + "j")


def dumps_csv(A) -> str:
    M = _as_matrix(A)
    lines = [f"# qtfa-complex v1, {M.shape[0]}, {M.shape[1]}"]
    lines += [",".join(format_cell(v) for v in row) for row in M]
    return "\n".join(lines) + "\n"


def loads_csv(text: str, path=None) -> np.ndarray:
    lines = text.splitlines()
    if not lines or not text.strip():
        raise FormatError("empty input", path, 1)
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise FormatError("expected header '# qtfa-complex v1, rows, cols'", path, 1)
    rows, cols = int(m.group(1)), int(m.group(2))
    body = [ln for ln in lines[1:]]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != rows:
        raise FormatError(f"expected {rows} data rows, found {len(body)}", path, len(body) + 1)
    out = np.empty((rows, cols), dtype=complex)
    for r, line in enumerate(body):
        cells = line.split(",")
        if len(cells) != cols:
            raise FormatError(f"expected {cols} fields, found {len(cells)}", path, r + 2)
        for c, cell in enumerate(cells):
            try:
                out[r, c] = parse_cell(cell)
            except ValueError as exc:
                raise FormatError(f"cannot parse {cell.strip()!r} as re+imi", path, r + 2, c + 1) from exc
    return out


def dumps_bin(A) -> bytes:
    M = np.ascontiguousarray(_as_matrix(A))
    payload = np.empty(M.size * 2, dtype="<f8")
    payload[0::2] = M.real.ravel()
    payload[1::2] = M.imag.ravel()
    return MAGIC + struct.pack("<II", *M.shape) + payload.tobytes()


def loads_bin(data: bytes, path=None) -> np.ndarray:
    if len(data) < 16:
        raise FormatError("file shorter than the 16-byte header", path)
    if data[:8] != MAGIC:
        raise FormatError("bad magic, not a QTFAC1 file", path)
    rows, cols = struct.unpack("<II", data[8:16])
    need = 16 + 16 * rows * cols
    if len(data) != need:
        raise FormatError(f"expected {need} bytes for {rows}x{cols}, found {len(data)}", path)
    v = np.frombuffer(data, dtype="<f8", offset=16)
    return (v[0::2] + 1j * v[1::2]).reshape(rows, cols)


def write_matrix(path, A, fmt: str | None = None) -> Path:
    path = Path(path)
    fmt = fmt or ("bin" if path.suffix == ".bin" else "csv")
    if fmt == "csv":
        return atomic_write(path, dumps_csv(A).encode())
    if fmt == "bin":
        return atomic_write(path, dumps_bin(A))
    raise FormatError(f"unknown format {fmt!r}")


def read_matrix(path) -> np.ndarray:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read input: {exc.strerror}", path) from exc
    if data[:8] == MAGIC:
        return loads_bin(data, path)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError("neither a QTFAC1 binary nor UTF-8 text", path) from exc
    return loads_csv(text, path)


def read_signal_or_operator(path) -> np.ndarray:
    """A 1 x N or N x 1 file is a signal; N x N is an operator."""
    M = read_matrix(path)
    if 1 in M.shape:
        return M.ravel()
    return M


def _hot(t: np.ndarray) -> np.ndarray:
    r = np.clip(3 * t, 0, 1)
    g = np.clip(3 * t - 1, 0, 1)
    b = np.clip(3 * t - 2, 0, 1)
    return np.stack([r, g, b], axis=-1)


def heatmap_ppm(A, scale: int = 8) -> bytes:
    """Binary PPM of ``|A|`` normalised by its maximum, each entry a ``scale``-pixel square."""
    M = np.abs(_as_matrix(A))
    top = M.max(initial=0.0)
    t = M / top if top > 0 else M
    rgb = (_hot(t) * 255 + 0.5).astype(np.uint8)
    rgb = np.repeat(np.repeat(rgb, scale, axis=0), scale, axis=1)
    h, w = rgb.shape[:2]
    return f"P6\n{w} {h}\n255\n".encode() + rgb.tobytes()


def write_heatmap(path, A, scale: int = 8) -> Path:
    return atomic_write(path, heatmap_ppm(A, scale))


__all__ = [
    "MAGIC",
    "atomic_write",
    "dumps_bin",
    "dumps_csv",
    "format_cell",
    "heatmap_ppm",
    "loads_bin",
    "loads_csv",
    "parse_cell",
    "read_matrix",
    "read_signal_or_operator",
    "write_heatmap",
    "write_matrix",
]
