"""Frame and plane containers, raw planar I/O, and block tiling geometry."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidBlockSize, InvalidDescriptor, SizeMismatch

BLOCK_SIZES = (4, 8, 16)


class ChromaFormat(enum.IntEnum):
    MONOCHROME = 0
    YUV420 = 1


@dataclass(frozen=True)
class FrameDescriptor:
    width: int
    height: int
    chroma_format: ChromaFormat = ChromaFormat.MONOCHROME
    bit_depth: int = 8

    def __post_init__(self):
        object.__setattr__(self, "chroma_format", ChromaFormat(self.chroma_format))
        if self.width < 1 or self.height < 1:
            raise InvalidDescriptor(f"frame dimensions must be positive, got {self.width}x{self.height}")
        if self.chroma_format == ChromaFormat.YUV420 and (self.width % 2 or self.height % 2):
            raise InvalidDescriptor(f"4:2:0 frames need even dimensions, got {self.width}x{self.height}")
        if self.bit_depth != 8:
            raise InvalidDescriptor(f"only 8-bit samples are supported, got {self.bit_depth}")

    @property
    def plane_shapes(self) -> list[tuple[int, int]]:
        """(height, width) of each plane in storage order."""
        shapes = [(self.height, self.width)]
        if self.chroma_format == ChromaFormat.YUV420:
            shapes += [(self.height // 2, self.width // 2)] * 2
        return shapes

    @property
    def frame_bytes(self) -> int:
        return sum(h * w for h, w in self.plane_shapes)


class Plane:
    """A row-major grid of 8-bit samples.

    The sample array is copied on construction and marked read-only, so a
    plane can be shared freely between workers.
    """

    __slots__ = ("samples",)

    def __init__(self, samples):
        arr = np.array(samples, dtype=np.int64, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidDescriptor(f"plane must be a non-empty 2-D grid, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() > 255:
            raise InvalidDescriptor("plane samples must lie in [0, 255]")
        arr = arr.astype(np.uint8)
        arr.flags.writeable = False
        self.samples = arr

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    def tobytes(self) -> bytes:
        return self.samples.tobytes()

    def __eq__(self, other):
        if not isinstance(other, Plane):
            return NotImplemented
        return self.samples.shape == other.samples.shape and bool(np.array_equal(self.samples, other.samples))

    def __repr__(self):
        return f"Plane({self.width}x{self.height})"


@dataclass(frozen=True, eq=False)
class Frame:
    descriptor: FrameDescriptor
    planes: tuple[Plane, ...]

    def __post_init__(self):
        shapes = self.descriptor.plane_shapes
        if len(self.planes) != len(shapes):
            raise InvalidDescriptor(f"expected {len(shapes)} planes, got {len(self.planes)}")
        for plane, shape in zip(self.planes, shapes):
            if plane.samples.shape != shape:
                raise InvalidDescriptor(f"plane shape {plane.samples.shape} does not match {shape}")

    @classmethod
    def from_arrays(cls, arrays: Sequence, chroma_format=ChromaFormat.MONOCHROME) -> "Frame":
        planes = tuple(Plane(a) for a in arrays)
        desc = FrameDescriptor(planes[0].width, planes[0].height, chroma_format)
        return cls(desc, planes)

    def tobytes(self) -> bytes:
        """Planar serialization (I420 order for 4:2:0)."""
        return b"".join(p.tobytes() for p in self.planes)

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return self.descriptor == other.descriptor and self.planes == other.planes


def load_raw_frame(data: bytes, desc: FrameDescriptor) -> Frame:
    """Split one planar frame (Y, then U, then V for 4:2:0) into planes."""
    if len(data) != desc.frame_bytes:
        raise SizeMismatch(
            f"{len(data)} bytes given, {desc.width}x{desc.height} "
            f"{desc.chroma_format.name.lower()} needs {desc.frame_bytes}"
        )
    buf = np.frombuffer(data, dtype=np.uint8)
    planes = []
    offset = 0
    for h, w in desc.plane_shapes:
        planes.append(Plane(buf[offset:offset + h * w].reshape(h, w)))
        offset += h * w
    return Frame(desc, tuple(planes))


def load_raw_frames(data: bytes, desc: FrameDescriptor, frames: int | None = None) -> list[Frame]:
    """Split a raw planar sequence into frames.

    With ``frames`` given the length must match exactly; otherwise it must be
    a non-zero multiple of the frame size.
    """
    size = desc.frame_bytes
    if frames is None:
        if not data or len(data) % size:
            raise SizeMismatch(f"{len(data)} bytes is not a whole number of {size}-byte frames")
        frames = len(data) // size
    elif len(data) != frames * size:
        raise SizeMismatch(f"{len(data)} bytes given, {frames} frame(s) of {size} bytes expected")
    return [load_raw_frame(data[i * size:(i + 1) * size], desc) for i in range(frames)]


def read_pgm(data: bytes) -> Frame:
    """Parse a binary PGM (P5, maxval 255) into a monochrome frame."""
    tokens = []
    pos = 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise InvalidDescriptor("truncated PGM header")
        tokens.append(data[start:pos])
    if tokens[0] != b"P5":
        raise InvalidDescriptor("not a binary PGM (P5) file")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise InvalidDescriptor("malformed PGM header") from None
    if maxval != 255:
        raise InvalidDescriptor(f"only maxval 255 is supported, got {maxval}")
    # exactly one whitespace byte separates the header from the raster
    pos += 1
    desc = FrameDescriptor(width, height)
    return load_raw_frame(data[pos:], desc)


def write_pgm(plane: Plane) -> bytes:
    return b"P5\n%d %d\n255\n" % (plane.width, plane.height) + plane.tobytes()


@dataclass(frozen=True)
class BlockGeometry:
    block_size: int
    x: int
    y: int
    width: int
    height: int

    @property
    def bx(self) -> int:
        return self.x // self.block_size

    @property
    def by(self) -> int:
        return self.y // self.block_size

    @property
    def samples(self) -> int:
        return self.width * self.height

    def slice(self) -> tuple[slice, slice]:
        return slice(self.y, self.y + self.height), slice(self.x, self.x + self.width)


def check_block_size(block_size: int) -> int:
    if block_size not in BLOCK_SIZES:
        raise InvalidBlockSize(f"block size must be one of {BLOCK_SIZES}, got {block_size}")
    return block_size


def grid_dims(width: int, height: int, block_size: int) -> tuple[int, int]:
    """Number of block columns and rows covering a width x height plane."""
    return -(-width // block_size), -(-height // block_size)


def tile_plane(plane: Plane | tuple[int, int], block_size: int) -> list[BlockGeometry]:
    """Raster-order tiles covering ``plane``; edge tiles are clipped.

    ``plane`` may also be a ``(height, width)`` shape.
    """
    check_block_size(block_size)
    height, width = (plane.height, plane.width) if isinstance(plane, Plane) else plane
    return list(_iter_tiles(width, height, block_size))


def _iter_tiles(width: int, height: int, n: int) -> Iterator[BlockGeometry]:
    for y in range(0, height, n):
        for x in range(0, width, n):
            yield BlockGeometry(n, x, y, min(n, width - x), min(n, height - y))
