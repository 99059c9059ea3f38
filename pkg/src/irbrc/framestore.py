"""Fixed-address slot storage for compressed frames.

Each block owns a slot of ``block_size**2 + 1`` bytes at an offset that
depends only on its plane and grid position, so any block can be fetched
without an address table.  The number of bytes actually used in every slot
is kept in a side index; that index is what bandwidth and DRR figures are
computed from.

Serialized layout (little-endian)::

    "IRBR" | version u8 | bit_depth u8 | block_size u8 | predictor u8
    | accounting u8 | width u32 | height u32 | chroma_format u8
    then per plane (Y, U, V):
        slot count u32 | used bytes u16 * count | slots back-to-back
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .codec import Accounting, CodecConfig, CompressedFrame, decode_payload
from .core import BlockGeometry, ChromaFormat, Frame, FrameDescriptor, Plane, grid_dims
from .errors import (BadMagic, BadVersion, CorruptContainer, EmptyContainer, IndexOutOfRange,
                     InvalidDescriptor, RectOutOfBounds, SlotOverflow, TruncatedStream)
from .predictors import PredictorKind

MAGIC = b"IRBR"
VERSION = 1
_HEADER = struct.Struct("<4sBBBBBIIB")


def slot_size(block_size: int) -> int:
    return block_size * block_size + 1


@dataclass(frozen=True)
class AccessStats:
    raw_bytes: int = 0
    compressed_bytes: int = 0
    blocks_touched: int = 0

    def __add__(self, other: "AccessStats") -> "AccessStats":
        return AccessStats(self.raw_bytes + other.raw_bytes,
                           self.compressed_bytes + other.compressed_bytes,
                           self.blocks_touched + other.blocks_touched)


@dataclass(frozen=True, eq=False)
class Container:
    descriptor: FrameDescriptor
    config: CodecConfig
    planes: tuple[bytes, ...]
    used: tuple[tuple[int, ...], ...]
    bit_lengths: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def slot_bytes(self) -> int:
        return slot_size(self.config.block_size)

    @property
    def block_count(self) -> int:
        return sum(len(u) for u in self.used)

    def grid(self, plane_id: int) -> tuple[int, int]:
        """(columns, rows) of the block grid of a plane."""
        h, w = self.descriptor.plane_shapes[plane_id]
        return grid_dims(w, h, self.config.block_size)

    def slot_offset(self, plane_id: int, bx: int, by: int) -> int:
        """Byte offset of a slot inside its plane region; no lookup involved."""
        cols, _ = self.grid(plane_id)
        return (by * cols + bx) * self.slot_bytes

    def geometry(self, plane_id: int, bx: int, by: int) -> BlockGeometry:
        self._check_index(plane_id, bx, by)
        h, w = self.descriptor.plane_shapes[plane_id]
        n = self.config.block_size
        x, y = bx * n, by * n
        return BlockGeometry(n, x, y, min(n, w - x), min(n, h - y))

    def slot_payload(self, plane_id: int, bx: int, by: int) -> bytes:
        """Used bytes of one slot; nothing else in the container is read."""
        self._check_index(plane_id, bx, by)
        cols, _ = self.grid(plane_id)
        off = self.slot_offset(plane_id, bx, by)
        return self.planes[plane_id][off:off + self.used[plane_id][by * cols + bx]]

    def _check_index(self, plane_id: int, bx: int, by: int) -> None:
        if not 0 <= plane_id < len(self.planes):
            raise IndexOutOfRange(f"plane {plane_id} not in container")
        cols, rows = self.grid(plane_id)
        if not (0 <= bx < cols and 0 <= by < rows):
            raise IndexOutOfRange(f"block ({bx}, {by}) outside {cols}x{rows} grid of plane {plane_id}")

    def to_bytes(self) -> bytes:
        d, c = self.descriptor, self.config
        parts = [_HEADER.pack(MAGIC, VERSION, d.bit_depth, c.block_size, int(c.predictor),
                              int(c.accounting), d.width, d.height, int(d.chroma_format))]
        for data, used in zip(self.planes, self.used):
            parts.append(struct.pack(f"<I{len(used)}H", len(used), *used))
            parts.append(data)
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data: bytes, offset: int = 0) -> tuple["Container", int]:
        """Parse one container starting at ``offset``; returns it and the end offset."""
        if len(data) - offset < 4:
            raise TruncatedStream("container header truncated")
        if data[offset:offset + 4] != MAGIC:
            raise BadMagic(f"bad magic {bytes(data[offset:offset + 4])!r}")
        if len(data) - offset < _HEADER.size:
            raise TruncatedStream("container header truncated")
        (_, version, bit_depth, block_size, predictor, accounting,
         width, height, chroma) = _HEADER.unpack_from(data, offset)
        if version != VERSION:
            raise BadVersion(f"unsupported container version {version}")
        try:
            desc = FrameDescriptor(width, height, ChromaFormat(chroma), bit_depth)
            cfg = CodecConfig(block_size, PredictorKind(predictor), Accounting(accounting))
        except (ValueError, InvalidDescriptor) as exc:
            raise CorruptContainer(f"invalid container header: {exc}") from None
        pos = offset + _HEADER.size
        slot = slot_size(block_size)
        planes, used_all, bits_all = [], [], []
        for h, w in desc.plane_shapes:
            cols, rows = grid_dims(w, h, block_size)
            if len(data) - pos < 4:
                raise TruncatedStream("slot table truncated")
            (count,) = struct.unpack_from("<I", data, pos)
            if count != cols * rows:
                raise CorruptContainer(f"slot table lists {count} slots, plane needs {cols * rows}")
            pos += 4
            if len(data) - pos < 2 * count + count * slot:
                raise TruncatedStream("plane data truncated")
            used = struct.unpack_from(f"<{count}H", data, pos)
            pos += 2 * count
            region = bytes(data[pos:pos + count * slot])
            pos += count * slot
            if any(u > slot for u in used):
                raise CorruptContainer("used-bytes entry larger than its slot")
            bits = []
            for i, u in enumerate(used):
                by, bx = divmod(i, cols)
                shape = (min(block_size, h - by * block_size), min(block_size, w - bx * block_size))
                try:
                    _, nbits = decode_payload(region[i * slot:i * slot + u], cfg, shape)
                except (ValueError, TruncatedStream) as exc:
                    raise CorruptContainer(f"slot {i} does not decode: {exc}") from None
                bits.append(nbits)
            planes.append(region)
            used_all.append(tuple(used))
            bits_all.append(tuple(bits))
        return cls(desc, cfg, tuple(planes), tuple(used_all), tuple(bits_all)), pos


def store_frame(cf: CompressedFrame) -> Container:
    slot = slot_size(cf.config.block_size)
    planes, used = [], []
    for blocks in cf.planes:
        region = bytearray(len(blocks) * slot)
        for i, cb in enumerate(blocks):
            if cb.nbytes > slot:
                raise SlotOverflow(f"block of {cb.nbytes} bytes exceeds {slot}-byte slot")
            region[i * slot:i * slot + cb.nbytes] = cb.payload
        planes.append(bytes(region))
        used.append(tuple(cb.nbytes for cb in blocks))
    bits = tuple(tuple(cb.bit_length for cb in blocks) for blocks in cf.planes)
    return Container(cf.descriptor, cf.config, tuple(planes), tuple(used), bits)


def load_frame(container: Container) -> Frame:
    """Decode every slot back into a frame."""
    planes = []
    for pid, (h, w) in enumerate(container.descriptor.plane_shapes):
        out = np.empty((h, w), dtype=np.uint8)
        cols, rows = container.grid(pid)
        for by in range(rows):
            for bx in range(cols):
                g = container.geometry(pid, bx, by)
                out[g.slice()] = fetch_block(container, pid, bx, by)
        planes.append(Plane(out))
    return Frame(container.descriptor, tuple(planes))


def fetch_block(container: Container, plane_id: int, bx: int, by: int) -> np.ndarray:
    g = container.geometry(plane_id, bx, by)
    samples, _ = decode_payload(container.slot_payload(plane_id, bx, by), container.config,
                                (g.height, g.width))
    return samples


def _burst(n: int, burst: int | None) -> int:
    return -(-n // burst) * burst if burst else n


def block_stats(container: Container, plane_id: int, bx: int, by: int,
                burst: int | None = None) -> AccessStats:
    g = container.geometry(plane_id, bx, by)
    cols, _ = container.grid(plane_id)
    return AccessStats(g.samples, _burst(container.used[plane_id][by * cols + bx], burst), 1)


def fetch_region(container: Container, plane_id: int, rect: tuple[int, int, int, int],
                 burst: int | None = None) -> tuple[np.ndarray, AccessStats]:
    """Read the ``(x, y, width, height)`` rectangle of a plane.

    Every slot intersecting the rectangle is decoded and the result is
    cropped.  ``burst`` rounds each slot transfer up to a multiple of that
    many bytes.
    """
    x, y, w, h = rect
    if not 0 <= plane_id < len(container.planes):
        raise IndexOutOfRange(f"plane {plane_id} not in container")
    ph, pw = container.descriptor.plane_shapes[plane_id]
    if w < 1 or h < 1 or x < 0 or y < 0 or x + w > pw or y + h > ph:
        raise RectOutOfBounds(f"rect {rect} outside {pw}x{ph} plane")
    n = container.config.block_size
    bx0, by0 = x // n, y // n
    bx1, by1 = (x + w - 1) // n, (y + h - 1) // n
    region = np.empty(((by1 - by0 + 1) * n, (bx1 - bx0 + 1) * n), dtype=np.uint8)
    stats = AccessStats()
    for by in range(by0, by1 + 1):
        for bx in range(bx0, bx1 + 1):
            block = fetch_block(container, plane_id, bx, by)
            oy, ox = (by - by0) * n, (bx - bx0) * n
            region[oy:oy + block.shape[0], ox:ox + block.shape[1]] = block
            stats += block_stats(container, plane_id, bx, by, burst)
    ox, oy = x - bx0 * n, y - by0 * n
    return region[oy:oy + h, ox:ox + w].copy(), stats


def container_drr(container: Container, accounting: Accounting | str | None = None,
                  planes=None) -> float:
    """Data reduction rate ``1 - compressed / original`` over the selected planes."""
    accounting = container.config.accounting if accounting is None else Accounting.parse(accounting)
    selected = [i for i in range(len(container.planes)) if planes is None or i in planes]
    shapes = container.descriptor.plane_shapes
    original = sum(shapes[i][0] * shapes[i][1] for i in selected if container.used[i])
    if original == 0:
        raise EmptyContainer("container holds no blocks")
    if accounting == Accounting.EXACT_BITS:
        compressed = sum(sum(container.bit_lengths[i]) for i in selected) / 8
    else:
        compressed = sum(sum(container.used[i]) for i in selected)
    return 1 - compressed / original


def read_containers(data: bytes) -> list[Container]:
    """Parse a file holding one or more containers back-to-back."""
    out = []
    pos = 0
    while pos < len(data):
        c, pos = Container.from_bytes(data, pos)
        out.append(c)
    if not out:
        raise TruncatedStream("empty container file")
    return out
