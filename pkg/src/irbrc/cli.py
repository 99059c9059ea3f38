"""Command-line front end: compress, decompress, gen-corpus, bench.

Exit codes: 0 success, 2 usage or input error, 3 corrupt container.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import run_bench
from .codec import CodecConfig, encode_frame
from .core import ChromaFormat, FrameDescriptor, load_raw_frames, read_pgm, write_pgm
from .corpus import KINDS, CorpusSpec, write_corpus
from .errors import CorruptContainer, IRBRError, TruncatedStream
from .framestore import container_drr, load_frame, read_containers, store_frame
from .predictors import PredictorKind

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CORRUPT = 3

PREDICTOR_NAMES = [k.name.lower() for k in PredictorKind]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="irbrc", description="Lossless intra reference block recompression.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compress", help="compress raw planar video or a PGM image")
    c.add_argument("--input", required=True, type=Path)
    c.add_argument("--width", type=int)
    c.add_argument("--height", type=int)
    c.add_argument("--format", choices=["gray", "yuv420p", "pgm"],
                   help="input layout; defaults to pgm for *.pgm files, else gray")
    c.add_argument("--frames", type=int, default=1, help="number of frames in the input")
    c.add_argument("--block-size", type=int, choices=[4, 8, 16], default=8)
    c.add_argument("--predictor", choices=PREDICTOR_NAMES, default="edge")
    c.add_argument("--accounting", choices=["bits", "bytes"], default="bytes")
    c.add_argument("--out", required=True, type=Path)

    d = sub.add_parser("decompress", help="restore raw planar frames from a container file")
    d.add_argument("--input", required=True, type=Path)
    d.add_argument("--out", required=True, type=Path)

    g = sub.add_parser("gen-corpus", help="write a deterministic synthetic sequence")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--width", type=int, required=True)
    g.add_argument("--height", type=int, required=True)
    g.add_argument("--frames", type=int, default=1)
    g.add_argument("--format", choices=["gray", "yuv420p"], default="gray")
    g.add_argument("--class", dest="seq_class", help="class label recorded in the manifest")
    g.add_argument("--scene", help="scene tag recorded in the manifest (e.g. intra, inter)")
    g.add_argument("--out", required=True, type=Path)

    b = sub.add_parser("bench", help="DRR matrix over a corpus directory")
    b.add_argument("--corpus", required=True, type=Path)
    b.add_argument("--predictors", type=_csv_list, default=PREDICTOR_NAMES)
    b.add_argument("--block-sizes", type=_csv_list, default=["4", "8", "16"])
    b.add_argument("--accounting", choices=["bits", "bytes"], default="bytes")
    b.add_argument("--report", choices=["csv", "json"], default="csv")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", type=Path)
    return p


def _compress(args) -> int:
    fmt = args.format or ("pgm" if args.input.suffix.lower() == ".pgm" else "gray")
    data = args.input.read_bytes()
    if fmt == "pgm":
        frames = [read_pgm(data)]
    else:
        if args.width is None or args.height is None:
            raise IRBRError("--width and --height are required for raw input")
        chroma = ChromaFormat.YUV420 if fmt == "yuv420p" else ChromaFormat.MONOCHROME
        frames = load_raw_frames(data, FrameDescriptor(args.width, args.height, chroma), args.frames)
    cfg = CodecConfig(args.block_size, args.predictor, args.accounting)
    blobs = []
    for i, frame in enumerate(frames):
        container = store_frame(encode_frame(frame, cfg))
        blobs.append(container.to_bytes())
        print(f"frame {i}: drr={container_drr(container):.6f}")
    args.out.write_bytes(b"".join(blobs))
    return EXIT_OK


def _decompress(args) -> int:
    frames = [load_frame(c) for c in read_containers(args.input.read_bytes())]
    if args.out.suffix.lower() == ".pgm" and len(frames) == 1 and len(frames[0].planes) == 1:
        args.out.write_bytes(write_pgm(frames[0].planes[0]))
    else:
        args.out.write_bytes(b"".join(f.tobytes() for f in frames))
    return EXIT_OK


def _gen_corpus(args) -> int:
    chroma = ChromaFormat.YUV420 if args.format == "yuv420p" else ChromaFormat.MONOCHROME
    spec = CorpusSpec(args.kind, args.seed, args.width, args.height, args.frames, chroma)
    path = write_corpus(spec, args.out, args.seq_class, args.scene)
    print(path)
    return EXIT_OK


def _bench(args) -> int:
    try:
        block_sizes = [int(n) for n in args.block_sizes]
    except ValueError:
        raise IRBRError(f"bad --block-sizes {','.join(args.block_sizes)}") from None
    try:
        report = run_bench(args.corpus, args.predictors, block_sizes, args.accounting, args.jobs)
    except RuntimeError as exc:
        print(f"irbrc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.to_csv() if args.report == "csv" else report.to_json()
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


_COMMANDS = {"compress": _compress, "decompress": _decompress,
             "gen-corpus": _gen_corpus, "bench": _bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (CorruptContainer, TruncatedStream) as exc:
        print(f"irbrc: corrupt container: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except (IRBRError, ValueError, OSError) as exc:
        print(f"irbrc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
