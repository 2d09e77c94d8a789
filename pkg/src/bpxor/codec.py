"""Bit-plane XOR embedding and stego-only recovery.

Three payload planes ride in the three low planes of R, three in G and two in
B.  Each stored bit is the payload bit XOR-ed with a mid-level plane of the
same channel, and that mid plane is never modified, so the receiver can undo
the XOR from the stego image alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionsTooLarge, PayloadTooLarge
from .planes import PLANE_COUNT, as_gray, as_rgb, bin2dec, dec2binp, xor_plane

# (channel index, stored-into plane, key plane, payload plane); planes 1-based, 1 = MSB
SCHEDULE: tuple[tuple[int, int, int, int], ...] = (
    (0, 6, 5, 1),
    (0, 7, 4, 2),
    (0, 8, 3, 3),
    (1, 6, 5, 4),
    (1, 7, 4, 5),
    (1, 8, 3, 6),
    (2, 7, 6, 7),
    (2, 8, 5, 8),
)

# highest plane touched per channel; planes above it are carried over verbatim
PRESERVED_PLANES = (5, 5, 6)

BITS_PER_PIXEL = 8


@dataclass(frozen=True)
class EmbedPlan:
    """Where an (m, n) payload sits inside an (M, N) cover.

    Shapes follow numpy order, ``(rows, cols)``.  The payload is anchored at
    the top-left corner.
    """

    cover_shape: tuple[int, int]
    payload_shape: tuple[int, int]
    anchor: tuple[int, int] = (0, 0)

    def __post_init__(self):
        (M, N), (m, n) = self.cover_shape, self.payload_shape
        if m < 1 or n < 1:
            raise ValueError(f"payload shape must be positive, got {self.payload_shape}")
        if m > M or n > N:
            raise PayloadTooLarge(
                f"payload {m}x{n} (rows x cols) does not fit in cover {M}x{N}"
            )

    @property
    def window(self) -> tuple[slice, slice]:
        r0, c0 = self.anchor
        m, n = self.payload_shape
        return slice(r0, r0 + m), slice(c0, c0 + n)

    @property
    def payload_bits(self) -> int:
        m, n = self.payload_shape
        return m * n * BITS_PER_PIXEL


def capacity(cover) -> int:
    """Maximum number of payload bits the cover can carry (8 per pixel)."""
    rows, cols = as_rgb(cover, "cover").shape[:2]
    return rows * cols * BITS_PER_PIXEL


def embed(cover, payload) -> np.ndarray:
    """Hide a gray ``payload`` in the top-left corner of an RGB ``cover``.

    Returns a new stego image the same size as the cover.  Pixels outside the
    payload window are copied from the cover unchanged.

    Raises:
        PayloadTooLarge: the payload has more rows or columns than the cover.
    """
    cover = as_rgb(cover, "cover")
    payload = as_gray(payload, "payload")
    plan = EmbedPlan(cover.shape[:2], payload.shape)
    rows, cols = plan.window

    payload_planes = dec2binp(payload, PLANE_COUNT)
    stego = cover.copy()
    for channel in range(3):
        planes = dec2binp(cover[rows, cols, channel], PLANE_COUNT)
        for ch, dst, key, src in SCHEDULE:
            if ch == channel:
                planes[dst - 1] = xor_plane(planes[key - 1], payload_planes[src - 1])
        stego[rows, cols, channel] = bin2dec(planes)
    return stego


def extract(stego, payload_shape: tuple[int, int]) -> np.ndarray:
    """Recover a ``(rows, cols)`` payload from the stego image alone.

    Asking for a region larger than the true payload returns XOR noise in the
    extra pixels; asking for a smaller one returns a crop of the payload.
    """
    stego = as_rgb(stego, "stego")
    m, n = payload_shape
    M, N = stego.shape[:2]
    if m < 1 or n < 1:
        raise ValueError(f"payload shape must be positive, got {payload_shape}")
    if m > M or n > N:
        raise DimensionsTooLarge(f"requested {m}x{n} region exceeds stego size {M}x{N}")

    recovered = np.zeros((PLANE_COUNT, m, n), dtype=np.uint8)
    for channel in range(3):
        planes = dec2binp(stego[:m, :n, channel], PLANE_COUNT)
        for ch, dst, key, src in SCHEDULE:
            if ch == channel:
                recovered[src - 1] = xor_plane(planes[key - 1], planes[dst - 1])
    return bin2dec(recovered)
