"""MSE / PSNR per channel and the histogram relative-entropy security score."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyImage
from .planes import as_gray, as_rgb

PEAK = 255
FIELDS = (
    "mse_r", "mse_g", "mse_b",
    "psnr_r", "psnr_g", "psnr_b", "psnr_avg",
    "kl_r", "kl_g", "kl_b",
)


@dataclass(frozen=True)
class MetricsReport:
    mse_r: float
    mse_g: float
    mse_b: float
    psnr_r: float
    psnr_g: float
    psnr_b: float
    psnr_avg: float
    kl_r: float
    kl_g: float
    kl_b: float

    def to_dict(self) -> dict:
        """Plain dict; infinite PSNR becomes ``None`` so it survives strict JSON."""
        return {k: (None if math.isinf(v) else v) for k, v in asdict(self).items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), allow_nan=False)

    def to_text(self) -> str:
        return "\n".join(f"{k}={format_value(getattr(self, k))}" for k in FIELDS)

    @classmethod
    def from_dict(cls, data: dict) -> "MetricsReport":
        return cls(**{k: math.inf if data[k] is None else float(data[k]) for k in FIELDS})


def format_value(value: float, digits: int = 6) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}f}"


def mse_channel(a, b) -> float:
    """Mean squared error; the sum is exact integer arithmetic, divided once."""
    a, b = as_gray(a, "a"), as_gray(b, "b")
    if a.shape != b.shape:
        raise DimensionMismatch(f"image sizes differ: {a.shape} vs {b.shape}")
    if a.size == 0:
        raise EmptyImage("cannot compute MSE of an empty image")
    diff = a.astype(np.int64) - b.astype(np.int64)
    return int(np.sum(diff * diff)) / a.size


def psnr_channel(mse: float, peak: int = PEAK) -> float:
    if mse < 0:
        raise ValueError(f"MSE must be non-negative, got {mse}")
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def histogram256(channel) -> np.ndarray:
    ch = as_gray(channel, "channel")
    return np.bincount(ch.ravel(), minlength=256).astype(np.int64)


def relative_entropy(cover_ch, stego_ch, smoothing: float = 1.0, base: float = math.e) -> float:
    """D(P_cover || P_stego) between 256-bin intensity histograms.

    ``smoothing`` is added to every bin of both histograms before
    normalisation (add-one by default) so no bin is ever zero.  ``base`` is the
    logarithm base; the default gives nats.
    """
    hc, hs = histogram256(cover_ch), histogram256(stego_ch)
    if hc.sum() == 0 or hs.sum() == 0:
        raise EmptyImage("relative entropy needs non-empty images")
    if smoothing < 0:
        raise ValueError("smoothing must be non-negative")
    pc = (hc + smoothing) / (hc.sum() + 256 * smoothing)
    ps = (hs + smoothing) / (hs.sum() + 256 * smoothing)
    mask = pc > 0
    if np.any(ps[mask] == 0):
        return math.inf
    d = float(np.sum(pc[mask] * np.log(pc[mask] / ps[mask])))
    # exact zero for identical histograms, and never negative from rounding
    return max(d, 0.0) / math.log(base)


def psnr_rgb(
    cover,
    stego,
    window: tuple[slice, slice] | None = None,
    smoothing: float = 1.0,
    base: float = math.e,
) -> MetricsReport:
    """Per-channel MSE/PSNR/relative entropy plus the mean of the channel PSNRs.

    ``psnr_avg`` averages the three PSNRs; it is not the PSNR of the mean MSE.
    With ``window`` every figure is computed over that sub-region only.
    """
    cover, stego = as_rgb(cover, "cover"), as_rgb(stego, "stego")
    if cover.shape != stego.shape:
        raise DimensionMismatch(f"image sizes differ: {cover.shape} vs {stego.shape}")
    if window is not None:
        cover, stego = cover[window], stego[window]
    mse = [mse_channel(cover[..., c], stego[..., c]) for c in range(3)]
    psnr = [psnr_channel(m) for m in mse]
    kl = [relative_entropy(cover[..., c], stego[..., c], smoothing, base) for c in range(3)]
    return MetricsReport(
        mse_r=mse[0], mse_g=mse[1], mse_b=mse[2],
        psnr_r=psnr[0], psnr_g=psnr[1], psnr_b=psnr[2],
        psnr_avg=sum(psnr) / 3.0,
        kl_r=kl[0], kl_g=kl[1], kl_b=kl[2],
    )
