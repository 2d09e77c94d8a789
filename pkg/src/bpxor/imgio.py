"""Lossless image files: binary PGM (P5), binary PPM (P6) and PNG.

Anything that could silently change a sample value is refused: JPEG, 16-bit
data, alpha/transparency, and colour data where gray is expected.
"""

from __future__ import annotations

import io
import os
import struct
import zlib
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import FormatError, IoError
from .planes import as_gray, as_rgb

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
JPEG_SUFFIXES = {".jpg", ".jpeg", ".jpe", ".jfif"}
WRITE_SUFFIXES = {".pgm": "gray", ".ppm": "rgb", ".png": None}

_JPEG_MSG = "JPEG is lossy and destroys embedded bit planes; use PNG, PGM or PPM"

# PNG IHDR colour types
_PNG_GRAY, _PNG_RGB, _PNG_PALETTE, _PNG_GRAY_ALPHA, _PNG_RGBA = 0, 2, 3, 4, 6


def _read_bytes(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except FileNotFoundError:
        raise IoError(f"{path}: no such file") from None
    except OSError as exc:
        raise IoError(f"{path}: {exc.strerror or exc}") from None


def _sniff(path, data: bytes) -> str:
    if data[:2] in (b"P5", b"P6"):
        return "netpbm"
    if data.startswith(PNG_SIGNATURE):
        return "png"
    if data[:3] == b"\xff\xd8\xff" or Path(path).suffix.lower() in JPEG_SUFFIXES:
        raise FormatError(f"{path}: {_JPEG_MSG}")
    if data[:2] in (b"P1", b"P2", b"P3", b"P4"):
        raise FormatError(f"{path}: only binary netpbm (P5/P6) is supported")
    raise FormatError(f"{path}: unsupported image format (expected PNG, PGM or PPM)")


# -- netpbm -----------------------------------------------------------------

def _parse_netpbm(path, data: bytes) -> np.ndarray:
    magic = data[:2]
    pos = 2
    fields = []
    while len(fields) < 3:
        if pos >= len(data):
            raise FormatError(f"{path}: truncated netpbm header")
        ch = data[pos:pos + 1]
        if ch == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        elif ch.isspace():
            pos += 1
        else:
            start = pos
            while pos < len(data) and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
                pos += 1
            token = data[start:pos]
            if not token.isdigit():
                raise FormatError(f"{path}: bad netpbm header token {token!r}")
            fields.append(int(token))
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise FormatError(f"{path}: missing whitespace after netpbm header")
    pos += 1
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError(f"{path}: empty image ({width}x{height})")
    if maxval > 255:
        raise FormatError(f"{path}: 16-bit samples (maxval {maxval}) are not supported")
    if maxval < 1:
        raise FormatError(f"{path}: invalid maxval {maxval}")
    depth = 1 if magic == b"P5" else 3
    need = width * height * depth
    raster = data[pos:pos + need]
    if len(raster) < need:
        raise FormatError(f"{path}: raster truncated ({len(raster)} of {need} bytes)")
    arr = np.frombuffer(raster, dtype=np.uint8)
    if arr.max() > maxval:
        raise FormatError(f"{path}: sample exceeds maxval {maxval}")
    shape = (height, width) if depth == 1 else (height, width, 3)
    return arr.reshape(shape).copy()


def _netpbm_bytes(image: np.ndarray) -> bytes:
    magic = "P5" if image.ndim == 2 else "P6"
    height, width = image.shape[:2]
    return f"{magic}\n{width} {height}\n255\n".encode("ascii") + image.tobytes()


# -- PNG --------------------------------------------------------------------

def _png_header(path, data: bytes) -> tuple[int, int]:
    """(bit depth, colour type) from the IHDR chunk."""
    if len(data) < 33 or data[12:16] != b"IHDR":
        raise FormatError(f"{path}: malformed PNG (no IHDR)")
    return data[24], data[25]


def _has_trns(data: bytes) -> bool:
    pos = 8
    while pos + 8 <= len(data):
        length, ctype = struct.unpack(">I4s", data[pos:pos + 8])
        if ctype == b"tRNS":
            return True
        if ctype in (b"IDAT", b"IEND"):
            return False
        pos += 12 + length
    return False


def _parse_png(path, data: bytes) -> np.ndarray:
    bit_depth, color_type = _png_header(path, data)
    if bit_depth == 16:
        raise FormatError(f"{path}: 16-bit PNG samples are not supported")
    if color_type in (_PNG_GRAY_ALPHA, _PNG_RGBA):
        raise FormatError(f"{path}: PNG has an alpha channel; remove it before embedding")
    if _has_trns(data):
        raise FormatError(f"{path}: PNG has a transparency (alpha) chunk; remove it before embedding")
    try:
        with Image.open(path) as im:
            im.load()
            if color_type == _PNG_GRAY:
                arr = np.asarray(im.convert("L") if im.mode == "1" else im)
                if bit_depth < 8 and im.mode != "1":
                    # Pillow keeps raw 2/4-bit codes in "L"; scale to the 8-bit range
                    arr = arr * (255 // ((1 << bit_depth) - 1))
                return np.asarray(arr, dtype=np.uint8)
            if color_type == _PNG_PALETTE:
                rgb = np.asarray(im.convert("RGB"), dtype=np.uint8)
                if np.array_equal(rgb[..., 0], rgb[..., 1]) and np.array_equal(rgb[..., 1], rgb[..., 2]):
                    return rgb[..., 0].copy()
                return rgb
            if color_type == _PNG_RGB:
                return np.asarray(im.convert("RGB"), dtype=np.uint8)
    except (UnidentifiedImageError, zlib.error, SyntaxError, ValueError) as exc:
        raise FormatError(f"{path}: cannot decode PNG ({exc})") from None
    except OSError as exc:
        raise FormatError(f"{path}: cannot decode PNG ({exc})") from None
    raise FormatError(f"{path}: unsupported PNG colour type {color_type}")


# -- public API -------------------------------------------------------------

def read_image(path) -> np.ndarray:
    """Read a gray ``(H, W)`` or RGB ``(H, W, 3)`` uint8 image."""
    data = _read_bytes(path)
    kind = _sniff(path, data)
    if kind == "netpbm":
        return _parse_netpbm(path, data)
    return _parse_png(path, data)


def read_gray(path) -> np.ndarray:
    img = read_image(path)
    if img.ndim != 2:
        raise FormatError(f"{path}: RGB image where an 8-bit grayscale image was expected")
    return img


def read_rgb(path) -> np.ndarray:
    img = read_image(path)
    if img.ndim != 3:
        raise FormatError(f"{path}: grayscale image where an RGB image was expected")
    return img


def _check_suffix(path, kind: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in JPEG_SUFFIXES:
        raise FormatError(f"{path}: {_JPEG_MSG}")
    if suffix not in WRITE_SUFFIXES:
        raise FormatError(f"{path}: unsupported output format {suffix!r} (use .png, .pgm or .ppm)")
    wanted = WRITE_SUFFIXES[suffix]
    if wanted is not None and wanted != kind:
        raise FormatError(f"{path}: {suffix} cannot hold a {kind} image")
    return suffix


def _write_bytes(path, payload: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(payload)
    except OSError as exc:
        raise IoError(f"{path}: {exc.strerror or exc}") from None


def _write(path, image: np.ndarray, kind: str) -> None:
    suffix = _check_suffix(path, kind)
    if suffix == ".png":
        buf = io.BytesIO()
        Image.fromarray(image, "L" if kind == "gray" else "RGB").save(buf, format="PNG")
        _write_bytes(path, buf.getvalue())
    else:
        _write_bytes(path, _netpbm_bytes(image))


def write_gray(path, image) -> None:
    _write(os.fspath(path), np.ascontiguousarray(as_gray(image)), "gray")


def write_rgb(path, image) -> None:
    _write(os.fspath(path), np.ascontiguousarray(as_rgb(image)), "rgb")


def write_image(path, image) -> None:
    if np.asarray(image).ndim == 2:
        write_gray(path, image)
    else:
        write_rgb(path, image)
