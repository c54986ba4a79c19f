"""File formats: the ``.nt`` tensor container, NetPBM images, frame folders.

``.nt`` layout (all integers little-endian):

    bytes 0..3   magic ``NTEN``
    u32          version (1)
    u32          N, the tensor order
    N x u32      extents
    u8           dtype: 0 = real float64, 1 = complex as float64 (re, im) pairs
    payload      row-major samples, little-endian

Round trips are bit-exact.
"""

from __future__ import annotations

import re
import struct
from math import prod
from pathlib import Path

import numpy as np

from .errors import FormatError

_MAGIC = b"NTEN"
_VERSION = 1
_DTYPE_REAL = 0
_DTYPE_COMPLEX = 1

__all__ = [
    "save_tensor",
    "load_tensor",
    "read_image",
    "write_image",
    "load_frame_dir",
    "save_frame_dir",
]


def save_tensor(path, tensor: np.ndarray) -> None:
    """Write ``tensor`` (real or complex) to ``path`` in ``.nt`` format."""
    arr = np.asarray(tensor)
    if arr.ndim < 1:
        arr = arr.reshape(1)
    if np.iscomplexobj(arr):
        code, dt = _DTYPE_COMPLEX, "<c16"
    else:
        code, dt = _DTYPE_REAL, "<f8"
    header = _MAGIC + struct.pack("<II", _VERSION, arr.ndim)
    header += struct.pack(f"<{arr.ndim}I", *arr.shape)
    header += struct.pack("<B", code)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(arr, dtype=dt).tobytes())


def load_tensor(path) -> np.ndarray:
    """Read a ``.nt`` file back into a float64 or complex128 array."""
    data = Path(path).read_bytes()
    if len(data) < 12 or data[:4] != _MAGIC:
        raise FormatError(f"{path}: not an .nt tensor file")
    version, order = struct.unpack_from("<II", data, 4)
    if version != _VERSION:
        raise FormatError(f"{path}: unsupported .nt version {version}")
    offset = 12
    if len(data) < offset + 4 * order + 1:
        raise FormatError(f"{path}: truncated .nt header")
    shape = struct.unpack_from(f"<{order}I", data, offset)
    offset += 4 * order
    (code,) = struct.unpack_from("<B", data, offset)
    offset += 1
    if code == _DTYPE_REAL:
        dt, itemsize = "<f8", 8
    elif code == _DTYPE_COMPLEX:
        dt, itemsize = "<c16", 16
    else:
        raise FormatError(f"{path}: unknown dtype code {code}")
    count = prod(shape)
    if len(data) - offset != count * itemsize:
        raise FormatError(
            f"{path}: payload has {len(data) - offset} bytes, "
            f"expected {count * itemsize}"
        )
    arr = np.frombuffer(data, dtype=dt, count=count, offset=offset)
    return arr.reshape(shape).astype(dt[1:], copy=True)


# --- NetPBM (binary P5 grayscale / P6 RGB, 8-bit) ---


def _read_pnm_tokens(data: bytes, n_tokens: int):
    """Pull header tokens, skipping '#' comments, return (tokens, offset)."""
    tokens = []
    i = 0
    while len(tokens) < n_tokens:
        if i >= len(data):
            raise FormatError("truncated NetPBM header")
        c = data[i : i + 1]
        if c == b"#":
            i = data.find(b"\n", i)
            if i < 0:
                raise FormatError("truncated NetPBM comment")
            i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace():
                j += 1
            tokens.append(data[i:j])
            i = j
    # exactly one whitespace byte separates the header from the raster
    return tokens, i + 1


def read_image(path) -> np.ndarray:
    """Read a binary P5/P6 image as floats in [0, 1].

    Returns ``(H, W)`` for grayscale, ``(H, W, 3)`` for RGB.
    """
    data = Path(path).read_bytes()
    if data[:2] == b"P5":
        channels = 1
    elif data[:2] == b"P6":
        channels = 3
    else:
        raise FormatError(f"{path}: not a binary P5/P6 NetPBM file")
    tokens, offset = _read_pnm_tokens(data, 4)
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError as exc:
        raise FormatError(f"{path}: bad NetPBM header") from exc
    if not 0 < maxval < 256:
        raise FormatError(f"{path}: only 8-bit images supported (maxval={maxval})")
    count = width * height * channels
    if len(data) - offset < count:
        raise FormatError(f"{path}: truncated pixel data")
    pixels = np.frombuffer(data, dtype=np.uint8, count=count, offset=offset)
    img = pixels.astype(np.float64) / maxval
    if channels == 1:
        return img.reshape(height, width)
    return img.reshape(height, width, 3)


def write_image(path, image: np.ndarray) -> None:
    """Write floats in [0, 1] as binary P5 (2-D input) or P6 (H, W, 3)."""
    arr = np.asarray(image, dtype=float)
    if arr.ndim == 2:
        magic = b"P5"
        height, width = arr.shape
    elif arr.ndim == 3 and arr.shape[2] == 3:
        magic = b"P6"
        height, width = arr.shape[:2]
    else:
        raise ValueError(f"expected (H, W) or (H, W, 3) image, got {arr.shape}")
    quantized = np.clip(np.rint(arr * 255.0), 0, 255).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(magic + b"\n%d %d\n255\n" % (width, height))
        fh.write(quantized.tobytes())


# --- frame folders (video as numerically ordered P6 frames) ---


def _frame_sort_key(name: str):
    digits = re.findall(r"\d+", name)
    return ([int(d) for d in digits], name)


def load_frame_dir(path) -> np.ndarray:
    """Load a directory of P6 frames as a ``(T, H, W, 3)`` array in [0, 1].

    Frames are ordered by the numeric parts of their file names.
    """
    folder = Path(path)
    names = sorted(
        (p for p in folder.iterdir() if p.is_file()), key=lambda p: _frame_sort_key(p.name)
    )
    frames = []
    for p in names:
        img = read_image(p)
        if img.ndim != 3:
            raise FormatError(f"{p}: video frames must be P6 (RGB)")
        frames.append(img)
    if not frames:
        raise FormatError(f"{folder}: no frames found")
    shapes = {f.shape for f in frames}
    if len(shapes) != 1:
        raise FormatError(f"{folder}: frames disagree on shape: {sorted(shapes)}")
    return np.stack(frames)


def save_frame_dir(path, video: np.ndarray, stem: str = "frame") -> None:
    """Write a ``(T, H, W, 3)`` array as numbered P6 frames."""
    arr = np.asarray(video)
    if arr.ndim != 4 or arr.shape[3] != 3:
        raise ValueError(f"expected (T, H, W, 3) video, got {arr.shape}")
    folder = Path(path)
    folder.mkdir(parents=True, exist_ok=True)
    width = max(4, len(str(arr.shape[0] - 1)))
    for t in range(arr.shape[0]):
        write_image(folder / f"{stem}_{t:0{width}d}.ppm", arr[t])
