"""Block, plane and frame compression.

Block bit layout (MSB first, zero padded to a whole byte)::

    COMPRESSED  0 | [HVD direction] | first sample (8) | 4x4 units ...
    RAW         1 | samples, 8 bits each, row-major

RAW is chosen whenever the compressed form would need at least as many bits
as the raw samples, so a block never costs more than its raw bytes plus one.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import BlockGeometry, Frame, FrameDescriptor, Plane, check_block_size, tile_plane
from .entropy import BitReader, BitWriter, decode_block_residuals, encode_block_residuals
from .errors import OutOfRange, ShapeMismatch
from .predictors import PredictorKind, predict_block, reconstruct_from_grid

MODE_COMPRESSED = 0
MODE_RAW = 1


class Accounting(enum.IntEnum):
    EXACT_BITS = 0
    BYTE_ALIGNED = 1

    @classmethod
    def parse(cls, name: "str | Accounting") -> "Accounting":
        if isinstance(name, int):
            return cls(name)
        aliases = {"bits": cls.EXACT_BITS, "exact_bits": cls.EXACT_BITS,
                   "bytes": cls.BYTE_ALIGNED, "byte_aligned": cls.BYTE_ALIGNED}
        try:
            return aliases[str(name).lower()]
        except KeyError:
            raise ValueError(f"unknown accounting mode {name!r}") from None


@dataclass(frozen=True)
class CodecConfig:
    block_size: int = 8
    predictor: PredictorKind = PredictorKind.EDGE
    accounting: Accounting = Accounting.BYTE_ALIGNED

    def __post_init__(self):
        check_block_size(self.block_size)
        object.__setattr__(self, "predictor", PredictorKind.parse(self.predictor))
        object.__setattr__(self, "accounting", Accounting.parse(self.accounting))


@dataclass(frozen=True)
class CompressedBlock:
    mode: int
    payload: bytes
    bit_length: int

    @property
    def nbytes(self) -> int:
        return len(self.payload)


def encode_block(block, cfg: CodecConfig) -> CompressedBlock:
    arr = np.asarray(block)
    if arr.ndim != 2 or arr.shape[0] > cfg.block_size or arr.shape[1] > cfg.block_size:
        raise ShapeMismatch(f"block of shape {arr.shape} does not fit {cfg.block_size}x{cfg.block_size}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise OutOfRange("block samples must lie in [0, 255]")
    rows = arr.astype(np.int64).tolist()
    rb = predict_block(rows, cfg.predictor)
    out = BitWriter()
    out.write(MODE_COMPRESSED, 1)
    if rb.side_info is not None:
        out.write(rb.side_info, 1)
    out.write(rb.first_sample, 8)
    encode_block_residuals(rb.grid(), out)

    raw_bits = 8 * arr.size
    if out.bit_length >= raw_bits:
        out = BitWriter()
        out.write(MODE_RAW, 1)
        for row in rows:
            for v in row:
                out.write(v, 8)
        return CompressedBlock(MODE_RAW, out.getvalue(), out.bit_length)
    return CompressedBlock(MODE_COMPRESSED, out.getvalue(), out.bit_length)


def decode_payload(payload: bytes, cfg: CodecConfig, shape: tuple[int, int]) -> tuple[np.ndarray, int]:
    """Decode one block from its payload bytes; returns (samples, bits consumed)."""
    height, width = shape
    inp = BitReader(payload)
    if inp.read_bit() == MODE_RAW:
        samples = [inp.read(8) for _ in range(height * width)]
        return np.array(samples, dtype=np.uint8).reshape(height, width), inp.pos
    direction = inp.read_bit() if cfg.predictor == PredictorKind.HVD else 0
    first = inp.read(8)
    grid = decode_block_residuals(height, width, inp)
    return reconstruct_from_grid(first, grid, cfg.predictor, direction), inp.pos


def decode_block(cb: CompressedBlock, cfg: CodecConfig, geometry: BlockGeometry | tuple[int, int]) -> np.ndarray:
    shape = (geometry.height, geometry.width) if isinstance(geometry, BlockGeometry) else tuple(geometry)
    samples, nbits = decode_payload(cb.payload, cfg, shape)
    if nbits != cb.bit_length:
        raise ShapeMismatch(f"decoded {nbits} bits, block records {cb.bit_length}")
    return samples


def encode_plane(plane: Plane, cfg: CodecConfig) -> list[CompressedBlock]:
    s = plane.samples
    return [encode_block(s[g.slice()], cfg) for g in tile_plane(plane, cfg.block_size)]


def decode_plane(blocks: list[CompressedBlock], cfg: CodecConfig, shape: tuple[int, int]) -> Plane:
    """Rebuild a ``(height, width)`` plane from its blocks in raster order."""
    tiles = tile_plane(tuple(shape), cfg.block_size)
    if len(tiles) != len(blocks):
        raise ShapeMismatch(f"{len(blocks)} blocks for a plane of {len(tiles)} tiles")
    out = np.empty(shape, dtype=np.uint8)
    for g, cb in zip(tiles, blocks):
        out[g.slice()] = decode_block(cb, cfg, g)
    return Plane(out)


@dataclass(frozen=True)
class CompressedFrame:
    descriptor: FrameDescriptor
    config: CodecConfig
    planes: tuple[tuple[CompressedBlock, ...], ...]

    def original_bytes(self, planes=None) -> int:
        shapes = self.descriptor.plane_shapes
        return sum(h * w for i, (h, w) in enumerate(shapes) if planes is None or i in planes)

    def compressed_size(self, accounting: Accounting | None = None, planes=None) -> float:
        """Compressed size in bytes; fractional under exact-bit accounting."""
        accounting = self.config.accounting if accounting is None else Accounting.parse(accounting)
        blocks = [cb for i, p in enumerate(self.planes) if planes is None or i in planes for cb in p]
        if accounting == Accounting.EXACT_BITS:
            return sum(cb.bit_length for cb in blocks) / 8
        return sum(cb.nbytes for cb in blocks)


def encode_frame(frame: Frame, cfg: CodecConfig) -> CompressedFrame:
    planes = tuple(tuple(encode_plane(p, cfg)) for p in frame.planes)
    return CompressedFrame(frame.descriptor, cfg, planes)


def decode_frame(cf: CompressedFrame) -> Frame:
    planes = tuple(decode_plane(list(blocks), cf.config, shape)
                   for blocks, shape in zip(cf.planes, cf.descriptor.plane_shapes))
    return Frame(cf.descriptor, planes)
