"""Deterministic synthetic test sequences.

These stand in for decoded screen-content sequences.  ``text_like`` draws
flat panels and glyph-like strokes from a small palette, the way rendered UI
text looks; ``mixed`` tiles four different kinds into quadrants.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import ChromaFormat, Frame, FrameDescriptor, Plane

KINDS = ("flat", "ramp", "text_like", "noise", "mixed")

# class labels used for averaged bench rows
KIND_CLASS = {"text_like": "TGM", "mixed": "MC"}

MANIFEST = "corpus.json"


@dataclass(frozen=True)
class CorpusSpec:
    kind: str
    seed: int = 0
    width: int = 64
    height: int = 64
    frame_count: int = 1
    chroma_format: ChromaFormat = ChromaFormat.MONOCHROME

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown corpus kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.frame_count < 1:
            raise ValueError("frame_count must be at least 1")
        object.__setattr__(self, "chroma_format", ChromaFormat(self.chroma_format))
        # validates the geometry
        FrameDescriptor(self.width, self.height, self.chroma_format)

    @property
    def descriptor(self) -> FrameDescriptor:
        return FrameDescriptor(self.width, self.height, self.chroma_format)

    @property
    def name(self) -> str:
        fmt = "gray" if self.chroma_format == ChromaFormat.MONOCHROME else "yuv420p"
        return f"{self.kind}_s{self.seed}_{self.width}x{self.height}_{fmt}"


# Fixed corpus used for the block-size and predictor-ordering checks.
BUNDLED_CORPUS = (
    CorpusSpec("text_like", seed=1, width=128, height=128, frame_count=1),
    CorpusSpec("text_like", seed=2, width=128, height=96, frame_count=1),
    CorpusSpec("mixed", seed=3, width=128, height=128, frame_count=1),
)


def _flat(rng, h, w, t):
    return np.full((h, w), 128, dtype=np.uint8)


def _ramp(rng, h, w, t):
    row = (np.arange(w) + t) % 256
    return np.broadcast_to(row, (h, w)).astype(np.uint8)


def _noise(rng, h, w, t):
    return rng.integers(0, 256, size=(h, w), dtype=np.uint8)


def _glyph(rng, img, y, x, gh, gw, ink):
    """Draw one glyph from random strokes inside a gh x gw cell."""
    strokes = rng.choice(7, size=int(rng.integers(2, 5)), replace=False)
    mid = gh // 2
    for s in strokes:
        if s == 0:
            img[y:y + gh, x] = ink
        elif s == 1:
            img[y:y + gh, x + gw - 1] = ink
        elif s == 2:
            img[y, x:x + gw] = ink
        elif s == 3:
            img[y + mid, x:x + gw] = ink
        elif s == 4:
            img[y + gh - 1, x:x + gw] = ink
        elif s == 5:
            img[y:y + gh, x + gw // 2] = ink
        else:
            # diagonal
            for i in range(min(gh, gw)):
                img[y + i, x + i] = ink


def _text_like(rng, h, w, t):
    palette = rng.choice(256, size=6, replace=False).astype(np.uint8)
    img = np.full((h, w), palette[0], dtype=np.uint8)
    # window panels
    for _ in range(max(1, (h * w) // 4096)):
        ph, pw = int(rng.integers(h // 6 + 1, h // 2 + 2)), int(rng.integers(w // 6 + 1, w // 2 + 2))
        py, px = int(rng.integers(0, max(1, h - ph))), int(rng.integers(0, max(1, w - pw)))
        img[py:py + ph, px:px + pw] = palette[int(rng.integers(1, 3))]
    # lines of text
    gh, gw = 7, 5
    y = int(rng.integers(1, 4))
    while y + gh < h:
        ink = palette[int(rng.integers(3, 6))]
        x = int(rng.integers(1, 6))
        line_end = w - int(rng.integers(0, w // 3 + 1))
        while x + gw < line_end:
            if rng.random() < 0.15:
                x += gw + 1
                continue
            _glyph(rng, img, y, x, gh, gw, ink)
            x += gw + 1 + int(rng.integers(0, 2))
        y += gh + int(rng.integers(3, 7))
    return img


def _mixed(rng, h, w, t):
    h2, w2 = h // 2, w // 2
    img = np.empty((h, w), dtype=np.uint8)
    img[:h2, :w2] = _text_like(rng, h2, w2, t) if h2 and w2 else 0
    img[:h2, w2:] = _ramp(rng, h2, w - w2, t)
    img[h2:, :w2] = _flat(rng, h - h2, w2, t)
    img[h2:, w2:] = _noise(rng, h - h2, w - w2, t)
    return img


_GENERATORS = {"flat": _flat, "ramp": _ramp, "text_like": _text_like,
               "noise": _noise, "mixed": _mixed}


def generate_frames(spec: CorpusSpec) -> list[Frame]:
    """Frames for ``spec``; identical specs give identical frames."""
    rng = np.random.default_rng(spec.seed)
    gen = _GENERATORS[spec.kind]
    frames = []
    for t in range(spec.frame_count):
        luma = gen(rng, spec.height, spec.width, t)
        planes = [Plane(luma)]
        if spec.chroma_format == ChromaFormat.YUV420:
            sub = luma[::2, ::2]
            planes += [Plane(sub), Plane(255 - sub)]
        frames.append(Frame(spec.descriptor, tuple(planes)))
    return frames


def write_corpus(spec: CorpusSpec, out_dir, seq_class: str | None = None,
                 scene: str | None = None) -> Path:
    """Write ``spec`` as raw planar bytes and register it in the manifest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{spec.name}.yuv"
    path.write_bytes(b"".join(f.tobytes() for f in generate_frames(spec)))
    entry = {
        "id": spec.name,
        "file": path.name,
        "width": spec.width,
        "height": spec.height,
        "format": "gray" if spec.chroma_format == ChromaFormat.MONOCHROME else "yuv420p",
        "frames": spec.frame_count,
        "class": seq_class or KIND_CLASS.get(spec.kind, "synthetic"),
    }
    if scene:
        entry["scene"] = scene
    update_manifest(out_dir, entry)
    return path


def read_manifest(corpus_dir) -> list[dict]:
    path = Path(corpus_dir) / MANIFEST
    if not path.exists():
        return []
    with open(path) as fh:
        return json.load(fh)["sequences"]


def update_manifest(corpus_dir, entry: dict) -> None:
    corpus_dir = Path(corpus_dir)
    entries = [e for e in read_manifest(corpus_dir) if e["id"] != entry["id"]]
    entries.append(entry)
    entries.sort(key=lambda e: e["id"])
    tmp = corpus_dir / (MANIFEST + ".tmp")
    with open(tmp, "w") as fh:
        json.dump({"sequences": entries}, fh, indent=2)
        fh.write("\n")
    os.replace(tmp, corpus_dir / MANIFEST)



def write_bundled_corpus(out_dir) -> list[Path]:
    """Write ``BUNDLED_CORPUS`` into ``out_dir``."""
    return [write_corpus(spec, out_dir) for spec in BUNDLED_CORPUS]
