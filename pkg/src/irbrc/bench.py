"""Predictor x block-size data-reduction-rate matrix over a corpus directory.

A corpus directory holds raw planar sequences described by ``corpus.json``
(written by ``gen-corpus``; user-supplied sequences can be added by hand).
Without a manifest, files named like ``name_WxH[_gray|_yuv420p].yuv`` and
binary ``*.pgm`` files are picked up directly.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from statistics import fmean
from typing import Iterable, Sequence

from .codec import Accounting, CodecConfig, encode_frame
from .core import ChromaFormat, Frame, FrameDescriptor, load_raw_frames, read_pgm
from .corpus import read_manifest
from .predictors import PredictorKind

log = logging.getLogger(__name__)

PLANE_NAMES = ("Y", "U", "V")
_NAME_RE = re.compile(r"_(\d+)x(\d+)(?:_(gray|yuv420p))?\.yuv$")


@dataclass(frozen=True)
class BenchRow:
    sequence_id: str
    plane_set: str
    predictor: str
    block_size: int
    accounting: str
    frames: int
    original_bytes: int
    compressed_bytes: float
    drr: float


@dataclass(frozen=True)
class AverageRow:
    group: str
    plane_set: str
    predictor: str
    block_size: int
    accounting: str
    sequences: int
    mean_drr: float


@dataclass
class BenchReport:
    rows: list[BenchRow]
    averages: list[AverageRow]

    def to_csv(self) -> str:
        buf = io.StringIO()
        for table, cls in ((self.rows, BenchRow), (self.averages, AverageRow)):
            w = csv.writer(buf, lineterminator="\n")
            w.writerow([f.name for f in fields(cls)])
            for r in table:
                w.writerow([repr(v) if isinstance(v, float) else v for v in asdict(r).values()])
            if cls is BenchRow:
                buf.write("\n")
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"rows": [asdict(r) for r in self.rows],
                           "averages": [asdict(r) for r in self.averages]}, indent=2) + "\n"

    def lookup(self, sequence_id: str, predictor: str, block_size: int, plane_set: str = "all") -> BenchRow:
        for r in self.rows:
            if (r.sequence_id, r.predictor, r.block_size, r.plane_set) == (sequence_id, predictor, block_size, plane_set):
                return r
        raise KeyError((sequence_id, predictor, block_size, plane_set))

    def average(self, group: str, predictor: str, block_size: int, plane_set: str = "all") -> float:
        for r in self.averages:
            if (r.group, r.predictor, r.block_size, r.plane_set) == (group, predictor, block_size, plane_set):
                return r.mean_drr
        raise KeyError((group, predictor, block_size, plane_set))


@dataclass(frozen=True)
class SequenceEntry:
    id: str
    path: Path
    descriptor: FrameDescriptor
    frames: int | None = None
    seq_class: str | None = None
    scene: str | None = None

    def load(self) -> list[Frame]:
        data = self.path.read_bytes()
        if self.path.suffix.lower() == ".pgm":
            return [read_pgm(data)]
        return load_raw_frames(data, self.descriptor, self.frames)


def discover(corpus_dir) -> list[SequenceEntry]:
    corpus_dir = Path(corpus_dir)
    seqs = []
    manifest = read_manifest(corpus_dir)
    if manifest:
        for e in manifest:
            fmt = ChromaFormat.YUV420 if e.get("format", "gray") == "yuv420p" else ChromaFormat.MONOCHROME
            seqs.append(SequenceEntry(
                e["id"], corpus_dir / e["file"],
                FrameDescriptor(int(e["width"]), int(e["height"]), fmt),
                e.get("frames"), e.get("class"), e.get("scene")))
        return seqs
    for path in sorted(corpus_dir.iterdir()):
        if path.suffix.lower() == ".pgm":
            try:
                desc = read_pgm(path.read_bytes()).descriptor
            except ValueError as exc:
                log.warning("skipping %s: %s", path.name, exc)
                continue
            seqs.append(SequenceEntry(path.stem, path, desc, 1))
            continue
        m = _NAME_RE.search(path.name)
        if m:
            fmt = ChromaFormat.YUV420 if m.group(3) == "yuv420p" else ChromaFormat.MONOCHROME
            seqs.append(SequenceEntry(path.stem, path, FrameDescriptor(int(m.group(1)), int(m.group(2)), fmt)))
    return seqs


def _plane_sets(desc: FrameDescriptor) -> list[tuple[str, tuple[int, ...] | None]]:
    sets = [("all", None)]
    if desc.chroma_format == ChromaFormat.YUV420:
        sets += [(name, (i,)) for i, name in enumerate(PLANE_NAMES)]
    return sets


def bench_frames(seq_id: str, frames: Sequence[Frame], predictors: Iterable[PredictorKind],
                 block_sizes: Iterable[int], accounting: Accounting) -> list[BenchRow]:
    rows = []
    desc = frames[0].descriptor
    acc_name = accounting.name.lower()
    for kind in predictors:
        for n in block_sizes:
            cfg = CodecConfig(n, kind, accounting)
            coded = [encode_frame(f, cfg) for f in frames]
            for name, planes in _plane_sets(desc):
                original = sum(cf.original_bytes(planes) for cf in coded)
                compressed = sum(cf.compressed_size(accounting, planes) for cf in coded)
                rows.append(BenchRow(seq_id, name, kind.name.lower(), n, acc_name, len(frames),
                                     original, compressed, 1 - compressed / original))
    return rows


def _bench_sequence(args):
    seq, predictors, block_sizes, accounting = args
    try:
        frames = seq.load()
    except (OSError, ValueError) as exc:
        return seq.id, None, str(exc)
    return seq.id, bench_frames(seq.id, frames, predictors, block_sizes, accounting), None


_PLANE_ORDER = {"all": 0, "Y": 1, "U": 2, "V": 3}


def _row_key(r):
    return (r.sequence_id, PredictorKind.parse(r.predictor), r.block_size, _PLANE_ORDER[r.plane_set])


def summarize(rows: list[BenchRow], seqs: Sequence[SequenceEntry] = ()) -> list[AverageRow]:
    """Mean per-sequence DRR per class, per scene, and overall."""
    labels = {s.id: s for s in seqs}
    groups: dict[tuple, list[float]] = {}
    for r in rows:
        s = labels.get(r.sequence_id)
        names = ["overall"]
        if s is not None and s.seq_class:
            names.append(f"class:{s.seq_class}")
        if s is not None and s.scene:
            names.append(f"scene:{s.scene}")
        for g in names:
            groups.setdefault((g, r.plane_set, r.predictor, r.block_size, r.accounting), []).append(r.drr)
    out = [AverageRow(g, ps, p, n, a, len(v), fmean(v)) for (g, ps, p, n, a), v in groups.items()]
    out.sort(key=lambda r: (r.group != "overall", r.group, PredictorKind.parse(r.predictor),
                            r.block_size, _PLANE_ORDER[r.plane_set]))
    return out


def run_bench(corpus_dir, predictors: Iterable = tuple(PredictorKind), block_sizes: Iterable[int] = (4, 8, 16),
              accounting="bytes", jobs: int = 1) -> BenchReport:
    """Evaluate every sequence under every (predictor, block size) pair.

    Unreadable sequences are skipped with a warning; ``RuntimeError`` is
    raised when nothing could be evaluated.
    """
    predictors = [PredictorKind.parse(p) for p in predictors]
    block_sizes = [int(n) for n in block_sizes]
    for n in block_sizes:
        CodecConfig(n)
    accounting = Accounting.parse(accounting)
    seqs = discover(corpus_dir)
    tasks = [(s, predictors, block_sizes, accounting) for s in seqs]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_bench_sequence, tasks))
    else:
        results = [_bench_sequence(t) for t in tasks]
    rows = []
    for seq_id, seq_rows, err in results:
        if err is not None:
            log.warning("skipping sequence %s: %s", seq_id, err)
            continue
        rows.extend(seq_rows)
    if not rows:
        raise RuntimeError(f"no readable sequences in {corpus_dir}")
    rows.sort(key=_row_key)
    return BenchReport(rows, summarize(rows, seqs))
