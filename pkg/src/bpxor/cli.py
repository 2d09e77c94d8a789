"""Command-line entry point: ``bpxor embed|extract|metrics|slice|bench``.

Exit codes: 0 success, 1 usage or contract error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import baseline, bench, codec
from .errors import IoError, StegoError
from .imgio import read_gray, read_image, read_rgb, write_gray, write_rgb
from .metrics import psnr_rgb
from .planes import dec2binp

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _scheme(text: str) -> str:
    try:
        bench.parse_scheme(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _sizes(text: str) -> list[int]:
    try:
        return [int(s.replace("_", "")) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def cmd_embed(args) -> int:
    cover = read_rgb(args.cover)
    payload = read_gray(args.payload)
    name, k = bench.parse_scheme(args.scheme)
    window = None
    if name == "xor":
        stego = codec.embed(cover, payload)
        if args.metrics_region == "window":
            window = codec.EmbedPlan(cover.shape[:2], payload.shape).window
    else:
        bits = baseline.image_to_bits(payload)
        try:
            stego = baseline.lsb_embed_rgb(cover, bits, baseline.LsbConfig(k))
        except StegoError as exc:
            raise UsageError(f"payload too large for lsb:{k}: {exc}") from None
    write_rgb(args.out, stego)
    report = psnr_rgb(cover, stego, window=window)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK


def cmd_extract(args) -> int:
    stego = read_rgb(args.stego)
    shape = (args.height, args.width)
    name, k = bench.parse_scheme(args.scheme)
    if name == "xor":
        payload = codec.extract(stego, shape)
    else:
        bits = baseline.lsb_extract_rgb(stego, args.width * args.height * 8, baseline.LsbConfig(k))
        payload = baseline.bits_to_image(bits, shape)
    write_gray(args.out, payload)
    return EXIT_OK


def cmd_metrics(args) -> int:
    a, b = read_rgb(args.a), read_rgb(args.b)
    report = psnr_rgb(a, b)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK


def cmd_slice(args) -> int:
    image = read_image(args.image)
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"{out_dir}: {exc.strerror or exc}") from None
    stem = Path(args.image).stem
    channels = [("", image)] if image.ndim == 2 else [
        (f"{c}_", image[..., i]) for i, c in enumerate("RGB")
    ]
    for prefix, channel in channels:
        for k, plane in enumerate(dec2binp(channel), start=1):
            write_gray(out_dir / f"{stem}_{prefix}plane{k}.png", plane * 255)
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = bench.run_bench(args.covers, args.payload, args.sizes, args.scheme, args.region)
    try:
        with open(args.out, "w", newline="") as fh:
            bench.write_csv(rows, fh, args.region)
    except OSError as exc:
        raise IoError(f"{args.out}: {exc.strerror or exc}") from None
    for row in rows:
        print(f"{row.cover_name}\t{row.payload_bits}\t{row.psnr_avg:.2f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bpxor", description="Bit-plane XOR image steganography")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("embed", help="hide a grayscale payload in an RGB cover")
    p.add_argument("--cover", required=True)
    p.add_argument("--payload", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--scheme", type=_scheme, default="xor", help="xor (default) or lsb:<k>")
    p.add_argument("--metrics-region", choices=("window", "full"), default="window",
                   help="score the payload window only (default) or the whole image")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover the payload from a stego image")
    p.add_argument("--stego", required=True)
    p.add_argument("--width", required=True, type=_positive)
    p.add_argument("--height", required=True, type=_positive)
    p.add_argument("--out", required=True)
    p.add_argument("--scheme", type=_scheme, default="xor")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("metrics", help="MSE/PSNR/relative entropy between two RGB images")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("slice", help="write every bit plane as a black/white PNG")
    p.add_argument("--image", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("bench", help="PSNR table over a directory of covers")
    p.add_argument("--covers", required=True)
    p.add_argument("--payload", required=True)
    p.add_argument("--sizes", type=_sizes, default=None,
                   help="comma-separated payload sizes in bits (default: whole payload)")
    p.add_argument("--out", required=True)
    p.add_argument("--scheme", type=_scheme, default="xor")
    p.add_argument("--region", choices=("window", "full"), default="window")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (IoError, FileNotFoundError, PermissionError) as exc:
        print(f"bpxor: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (StegoError, UsageError, ValueError) as exc:
        print(f"bpxor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
