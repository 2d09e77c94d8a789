"""Capacity/PSNR benchmark over a directory of covers (CSV output)."""

from __future__ import annotations

import csv
import math
from dataclasses import astuple, dataclass, fields
from pathlib import Path

import numpy as np

from . import baseline, codec
from .errors import FormatError, PayloadTooLarge
from .imgio import read_gray, read_rgb
from .metrics import psnr_rgb

COVER_SUFFIXES = {".png", ".ppm", ".pgm"}
TABLE_SIZES = (20_000, 80_000, 320_000, 460_800)


@dataclass(frozen=True)
class BenchRow:
    cover_name: str
    payload_bits: int
    mse_r: float
    mse_g: float
    mse_b: float
    psnr_r: float
    psnr_g: float
    psnr_b: float
    psnr_avg: float
    scheme: str


COLUMNS = tuple(f.name for f in fields(BenchRow))


def parse_scheme(text: str) -> tuple[str, int | None]:
    """``"xor"`` -> ("xor", None); ``"lsb:4"`` -> ("lsb", 4)."""
    if text == "xor":
        return "xor", None
    name, _, arg = text.partition(":")
    if name == "lsb" and arg.isdigit() and 1 <= int(arg) <= 8:
        return "lsb", int(arg)
    raise ValueError(f"unknown scheme {text!r} (expected 'xor' or 'lsb:<k>' with k in 1..8)")


def dims_for_bits(bits: int) -> tuple[int, int]:
    """Most-square ``(rows, cols)`` with ``rows * cols * 8 == bits`` and cols >= rows."""
    if bits <= 0 or bits % codec.BITS_PER_PIXEL:
        raise ValueError(f"payload size {bits} is not a positive multiple of 8 bits")
    pixels = bits // codec.BITS_PER_PIXEL
    rows = math.isqrt(pixels)
    while pixels % rows:
        rows -= 1
    return rows, pixels // rows


def list_covers(covers_dir) -> list[Path]:
    root = Path(covers_dir)
    if not root.is_dir():
        raise FileNotFoundError(f"{covers_dir}: not a directory")
    return sorted(p for p in root.iterdir() if p.is_file() and p.suffix.lower() in COVER_SUFFIXES)


def bench_one(
    cover: np.ndarray,
    payload: np.ndarray,
    cover_name: str,
    scheme: str = "xor",
    region: str = "window",
) -> BenchRow:
    """Embed ``payload`` into ``cover`` and score the result.

    For the XOR scheme ``region="window"`` scores only the pixels under the
    payload; ``"full"`` scores the whole cover.  LSB is always scored over the
    whole cover since its bits run across channels.
    """
    name, k = parse_scheme(scheme)
    window = None
    if name == "xor":
        stego = codec.embed(cover, payload)
        if region == "window":
            window = codec.EmbedPlan(cover.shape[:2], payload.shape).window
        elif region != "full":
            raise ValueError(f"region must be 'window' or 'full', got {region!r}")
    else:
        stego = baseline.lsb_embed_rgb(cover, baseline.image_to_bits(payload), baseline.LsbConfig(k))
    rep = psnr_rgb(cover, stego, window=window)
    return BenchRow(
        cover_name=cover_name,
        payload_bits=payload.size * codec.BITS_PER_PIXEL,
        mse_r=rep.mse_r, mse_g=rep.mse_g, mse_b=rep.mse_b,
        psnr_r=rep.psnr_r, psnr_g=rep.psnr_g, psnr_b=rep.psnr_b,
        psnr_avg=rep.psnr_avg,
        scheme=scheme,
    )


def run_bench(
    covers_dir,
    payload_path,
    sizes: list[int] | None = None,
    scheme: str = "xor",
    region: str = "window",
) -> list[BenchRow]:
    """One row per (cover, size), sorted by cover name then size.

    ``sizes`` are bit counts; each is turned into a top-left crop of the
    payload via :func:`dims_for_bits`.  ``None`` means the whole payload.
    """
    parse_scheme(scheme)
    paths = list_covers(covers_dir)
    if not paths:
        raise FormatError(f"{covers_dir}: no covers found (.png, .ppm, .pgm)")
    payload = read_gray(payload_path)
    if sizes is None:
        sizes = [payload.size * codec.BITS_PER_PIXEL]
    crops = []
    for bits in sizes:
        rows, cols = dims_for_bits(bits)
        if rows > payload.shape[0] or cols > payload.shape[1]:
            raise PayloadTooLarge(
                f"payload size {bits} bits needs a {rows}x{cols} crop but the payload is "
                f"{payload.shape[0]}x{payload.shape[1]}"
            )
        crops.append(payload[:rows, :cols])

    rows_out = []
    for path in paths:
        cover = read_rgb(path)
        for crop in crops:
            rows_out.append(bench_one(cover, crop, path.stem, scheme, region))
    rows_out.sort(key=lambda r: (r.cover_name, r.payload_bits))
    return rows_out


def _cell(value) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return f"{value:.4f}"
    return str(value)


def write_csv(rows: list[BenchRow], out, region: str = "window") -> None:
    """CSV with ``#`` comment lines, a header row, then one line per row.

    PSNR columns carry two decimals, MSE columns four.
    """
    writer = csv.writer(out, lineterminator="\n")
    out.write("# payload dims: bits/8 pixels as the most-square rows x cols with cols >= rows, "
              "cropped from the payload's top-left corner\n")
    out.write(f"# metrics region: {region}\n")
    writer.writerow(COLUMNS)
    for row in rows:
        cells = []
        for name, value in zip(COLUMNS, astuple(row)):
            if name.startswith("psnr") and not math.isinf(value):
                cells.append(f"{value:.2f}")
            else:
                cells.append(_cell(value))
        writer.writerow(cells)


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(lines))
