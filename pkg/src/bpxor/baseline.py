"""Plain k-LSB substitution, the comparison point for the XOR scheme.

Bits go in row-major pixel order, MSB-first inside each pixel's k-bit group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RequestTooLarge, SecretTooLarge
from .planes import as_gray, as_rgb


@dataclass(frozen=True)
class LsbConfig:
    k: int = 4

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or not 1 <= self.k <= 8:
            raise ValueError(f"k must be an integer in 1..8, got {self.k!r}")


def _as_bits(bits) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("secret bits must be 0 or 1")
    return arr


def _groups_to_bits(values: np.ndarray, k: int) -> np.ndarray:
    shifts = np.arange(k - 1, -1, -1, dtype=np.uint8)
    return ((values[:, None] >> shifts) & 1).astype(np.uint8).ravel()


def lsb_capacity(shape: tuple[int, ...], cfg: LsbConfig) -> int:
    return int(np.prod(shape)) * cfg.k


def lsb_embed(cover_ch, secret_bits, cfg: LsbConfig) -> np.ndarray:
    """Replace the k low bits of successive pixels with ``secret_bits``.

    A trailing partial group only overwrites its leading bits; the rest of
    that pixel, and every later pixel, keeps the cover's value.
    """
    cover = as_gray(cover_ch, "cover")
    bits = _as_bits(secret_bits)
    k = cfg.k
    if bits.size > cover.size * k:
        raise SecretTooLarge(f"{bits.size} bits exceed capacity {cover.size * k} (k={k})")
    n_pix = -(-bits.size // k)
    flat = cover.ravel().copy()
    mask = np.uint8((1 << k) - 1)
    groups = _groups_to_bits(flat[:n_pix] & mask, k)
    groups[: bits.size] = bits
    weights = (1 << np.arange(k - 1, -1, -1)).astype(np.uint16)
    values = (groups.reshape(n_pix, k) * weights).sum(axis=1).astype(np.uint8)
    flat[:n_pix] = (flat[:n_pix] & np.uint8(~mask & 0xFF)) | values
    return flat.reshape(cover.shape)


def lsb_extract(stego_ch, n_bits: int, cfg: LsbConfig) -> np.ndarray:
    stego = as_gray(stego_ch, "stego")
    k = cfg.k
    if n_bits < 0:
        raise ValueError("n_bits must be non-negative")
    if n_bits > stego.size * k:
        raise RequestTooLarge(f"{n_bits} bits exceed capacity {stego.size * k} (k={k})")
    n_pix = -(-n_bits // k)
    mask = np.uint8((1 << k) - 1)
    return _groups_to_bits(stego.ravel()[:n_pix] & mask, k)[:n_bits]


def lsb_embed_rgb(cover, secret_bits, cfg: LsbConfig) -> np.ndarray:
    """Fill the R channel first, then G, then B."""
    cover = as_rgb(cover, "cover")
    bits = _as_bits(secret_bits)
    per_channel = lsb_capacity(cover.shape[:2], cfg)
    if bits.size > 3 * per_channel:
        raise SecretTooLarge(f"{bits.size} bits exceed capacity {3 * per_channel} (k={cfg.k})")
    stego = cover.copy()
    for c in range(3):
        chunk = bits[c * per_channel:(c + 1) * per_channel]
        if chunk.size == 0:
            break
        stego[..., c] = lsb_embed(cover[..., c], chunk, cfg)
    return stego


def lsb_extract_rgb(stego, n_bits: int, cfg: LsbConfig) -> np.ndarray:
    stego = as_rgb(stego, "stego")
    per_channel = lsb_capacity(stego.shape[:2], cfg)
    if n_bits > 3 * per_channel:
        raise RequestTooLarge(f"{n_bits} bits exceed capacity {3 * per_channel} (k={cfg.k})")
    out = []
    remaining = n_bits
    for c in range(3):
        take = min(remaining, per_channel)
        out.append(lsb_extract(stego[..., c], take, cfg))
        remaining -= take
    return np.concatenate(out)


def image_to_bits(image) -> np.ndarray:
    """Row-major pixels, MSB first."""
    return np.unpackbits(as_gray(image, "payload").ravel())


def bits_to_image(bits, shape: tuple[int, int]) -> np.ndarray:
    return np.packbits(_as_bits(bits)).reshape(shape)
