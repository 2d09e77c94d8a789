"""Bit-plane XOR steganography: hide an 8-bit grayscale image in an RGB cover."""

from .codec import EmbedPlan, capacity, embed, extract
from .errors import (
    DimensionMismatch,
    DimensionsTooLarge,
    EmptyImage,
    FormatError,
    IoError,
    PayloadTooLarge,
    RequestTooLarge,
    SecretTooLarge,
    StegoError,
    UnsupportedDepth,
)
from .metrics import MetricsReport, mse_channel, psnr_channel, psnr_rgb, relative_entropy
from .planes import bin2dec, dec2binp, merge_comp, split_comp, xor_plane

__version__ = "0.1.0"

__all__ = [
    "EmbedPlan", "capacity", "embed", "extract",
    "MetricsReport", "mse_channel", "psnr_channel", "psnr_rgb", "relative_entropy",
    "bin2dec", "dec2binp", "merge_comp", "split_comp", "xor_plane",
    "DimensionMismatch", "DimensionsTooLarge", "EmptyImage", "FormatError", "IoError",
    "PayloadTooLarge", "RequestTooLarge", "SecretTooLarge", "StegoError", "UnsupportedDepth",
]
