"""Bit-plane slicing and channel splitting.

Images are plain numpy arrays: a gray image is ``(H, W)`` uint8, an RGB image
is ``(H, W, 3)`` uint8, a bit plane is ``(H, W)`` uint8 holding only 0/1 and a
plane stack is ``(8, H, W)``.  ``stack[0]`` is plane 1, the most significant
bit; ``stack[7]`` is plane 8, the least significant bit.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, UnsupportedDepth

PLANE_COUNT = 8

# weight of plane k (1-based) is 2 ** (8 - k)
_SHIFTS = np.arange(PLANE_COUNT - 1, -1, -1, dtype=np.uint8)


def as_gray(image, name: str = "image") -> np.ndarray:
    """Validate a gray image and return it as a uint8 array."""
    arr = np.asarray(image)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name}: expected a 2-D gray image, got shape {arr.shape}")
    return _to_uint8(arr, name)


def as_rgb(image, name: str = "image") -> np.ndarray:
    """Validate an RGB image and return it as a uint8 ``(H, W, 3)`` array."""
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise DimensionMismatch(f"{name}: expected an (H, W, 3) RGB image, got shape {arr.shape}")
    return _to_uint8(arr, name)


def _to_uint8(arr: np.ndarray, name: str) -> np.ndarray:
    if arr.dtype == np.uint8:
        return arr
    if arr.dtype.kind not in "iub":
        raise TypeError(f"{name}: integer intensities required, got dtype {arr.dtype}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError(f"{name}: intensities must lie in [0, 255]")
    return arr.astype(np.uint8)


def split_comp(image) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rgb = as_rgb(image)
    return rgb[..., 0].copy(), rgb[..., 1].copy(), rgb[..., 2].copy()


def merge_comp(r, g, b) -> np.ndarray:
    r, g, b = as_gray(r, "r"), as_gray(g, "g"), as_gray(b, "b")
    if not r.shape == g.shape == b.shape:
        raise DimensionMismatch(
            f"channel sizes differ: r={r.shape}, g={g.shape}, b={b.shape}"
        )
    return np.stack([r, g, b], axis=-1)


def dec2binp(channel, n_planes: int = PLANE_COUNT) -> np.ndarray:
    """Slice a gray channel into its 8 bit planes, MSB first."""
    if n_planes != PLANE_COUNT:
        raise UnsupportedDepth(f"only 8 bit planes are supported, got {n_planes}")
    ch = as_gray(channel, "channel")
    return (ch[np.newaxis, :, :] >> _SHIFTS[:, np.newaxis, np.newaxis]) & np.uint8(1)


def bin2dec(stack) -> np.ndarray:
    """Recombine an MSB-first plane stack into a gray channel."""
    planes = np.asarray(stack)
    if planes.ndim != 3 or planes.shape[0] != PLANE_COUNT:
        raise DimensionMismatch(f"expected a stack of 8 planes, got shape {planes.shape}")
    if planes.size and planes.max() > 1:
        raise ValueError("bit planes may only hold 0 or 1")
    planes = planes.astype(np.uint8, copy=False)
    out = np.zeros(planes.shape[1:], dtype=np.uint8)
    for plane, shift in zip(planes, _SHIFTS):
        out |= plane << shift
    return out


def xor_plane(a, b) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.uint8), np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape:
        raise DimensionMismatch(f"plane sizes differ: {a.shape} vs {b.shape}")
    return a ^ b


def plane_of(channel, k: int) -> np.ndarray:
    """Plane ``k`` (1 = MSB .. 8 = LSB) of a gray channel."""
    if not 1 <= k <= PLANE_COUNT:
        raise ValueError(f"plane index must be in 1..8, got {k}")
    return (as_gray(channel, "channel") >> np.uint8(PLANE_COUNT - k)) & np.uint8(1)
