"""Bit I/O, the small-value optimized VLC table family, and Exp-Golomb fallback.

Residuals are grouped into 4x4 units.  Each unit is coded with one table
chosen by the largest magnitude in the unit: a header selects one of eight
categories, then every residual is coded with that category's code.

For categories 1..6 the table with upper bound ``U = 2**k`` (``k = id - 1``)
codes a residual ``v`` as::

    v == 0           k zeros, then "1"
    0 < |v| < U      |v| as a k-bit binary number, then the sign bit
    |v| == U         k + 1 zeros, then the sign bit

Sign bit 0 is positive, 1 negative.  Category 0 (all zeros) codes nothing
after the header and category 7 falls back to signed order-0 Exp-Golomb.
All bit I/O is MSB-first.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import OutOfRange, TruncatedStream

UNIT = 4


class BitWriter:
    """Append-only MSB-first bit sink."""

    __slots__ = ("_acc", "_n")

    def __init__(self):
        self._acc = 0
        self._n = 0

    def write(self, value: int, nbits: int) -> None:
        if nbits:
            self._acc = (self._acc << nbits) | (value & ((1 << nbits) - 1))
            self._n += nbits

    def write_bits(self, bits: str) -> None:
        """Append a string of '0'/'1' characters."""
        if bits:
            self.write(int(bits, 2), len(bits))

    def __len__(self) -> int:
        return self._n

    @property
    def bit_length(self) -> int:
        return self._n

    def to01(self) -> str:
        return format(self._acc, f"0{self._n}b") if self._n else ""

    def getvalue(self) -> bytes:
        """Bytes with the final partial byte zero-padded."""
        pad = -self._n % 8
        return (self._acc << pad).to_bytes((self._n + pad) // 8, "big")


class BitReader:
    """MSB-first bit source over a byte string."""

    __slots__ = ("_val", "_total", "pos")

    def __init__(self, data: bytes, nbits: int | None = None):
        total = len(data) * 8
        if nbits is not None:
            if nbits > total:
                raise TruncatedStream(f"{nbits} bits requested from {len(data)} bytes")
            total = nbits
        self._val = int.from_bytes(data, "big") >> (len(data) * 8 - total)
        self._total = total
        self.pos = 0

    @classmethod
    def from01(cls, bits: str) -> "BitReader":
        pad = -len(bits) % 8
        data = int(bits + "0" * pad, 2).to_bytes((len(bits) + pad) // 8, "big") if bits else b""
        return cls(data, len(bits))

    @property
    def remaining(self) -> int:
        return self._total - self.pos

    def read(self, nbits: int) -> int:
        if nbits > self._total - self.pos:
            raise TruncatedStream(f"needed {nbits} bits at position {self.pos}, {self.remaining} left")
        self.pos += nbits
        return (self._val >> (self._total - self.pos)) & ((1 << nbits) - 1)

    def read_bit(self) -> int:
        return self.read(1)

    def count_zeros(self, limit: int) -> int:
        """Consume zero bits up to ``limit``; stops before the first one bit."""
        n = 0
        while n < limit:
            if self.pos >= self._total:
                raise TruncatedStream(f"stream ended inside a zero run at bit {self.pos}")
            if (self._val >> (self._total - self.pos - 1)) & 1:
                break
            self.pos += 1
            n += 1
        return n


@dataclass(frozen=True)
class Category:
    id: int
    header: str
    max_magnitude: float

    @property
    def k(self) -> int:
        """Binary width of the magnitude field; only meaningful for ids 1..6."""
        return self.id - 1


CATEGORIES = (
    Category(0, "00", 0),
    Category(1, "01", 1),
    Category(2, "10", 2),
    Category(3, "110", 4),
    Category(4, "1110", 8),
    Category(5, "11110", 16),
    Category(6, "111110", 32),
    Category(7, "111111", float("inf")),
)


def category_for(max_abs: int) -> Category:
    """Smallest category whose range holds ``max_abs``."""
    if max_abs < 0:
        raise OutOfRange(f"magnitude must be non-negative, got {max_abs}")
    if max_abs <= 2:
        return CATEGORIES[max_abs]
    if max_abs > 32:
        return CATEGORIES[7]
    return CATEGORIES[(max_abs - 1).bit_length() + 1]


def write_header(c: Category, out: BitWriter) -> None:
    out.write_bits(c.header)


def read_header(inp: BitReader) -> Category:
    # "00" / "01" / "10" are two-bit; otherwise count leading ones after "11"
    first = inp.read(2)
    if first != 3:
        return CATEGORIES[first]
    for cid in range(3, 7):
        if not inp.read_bit():
            return CATEGORIES[cid]
    return CATEGORIES[7]


def residual_code_length(v: int, c: Category) -> int:
    if c.id == 0:
        return 0
    if c.id == 7:
        return eg0_length(v)
    return c.k + 2 if abs(v) == 1 << c.k else c.k + 1


def encode_residual(v: int, c: Category, out: BitWriter) -> None:
    if c.id == 7:
        eg0_encode_signed(v, out)
        return
    if c.id == 0:
        if v:
            raise OutOfRange(f"category 0 holds only zero, got {v}")
        return
    k = c.k
    m = abs(v)
    if m > 1 << k:
        raise OutOfRange(f"|{v}| exceeds category {c.id} bound {1 << k}")
    sign = 1 if v < 0 else 0
    if v == 0:
        out.write(1, k + 1)
    elif m == 1 << k:
        out.write(sign, k + 2)
    else:
        out.write((m << 1) | sign, k + 1)


def decode_residual(c: Category, inp: BitReader) -> int:
    if c.id == 7:
        return eg0_decode_signed(inp)
    if c.id == 0:
        return 0
    k = c.k
    m = inp.read(k)
    if m == 0:
        if inp.read_bit():
            return 0
        m = 1 << k
    return -m if inp.read_bit() else m


def residual_code(v: int, c: Category) -> str:
    """Codeword of ``v`` under ``c`` as a '0'/'1' string."""
    w = BitWriter()
    encode_residual(v, c, w)
    return w.to01()


def _zigzag(v: int) -> int:
    return 2 * v - 1 if v > 0 else -2 * v


def eg0_length(v: int) -> int:
    return 2 * (_zigzag(v) + 1).bit_length() - 1


def eg0_encode_signed(v: int, out: BitWriter) -> None:
    code = _zigzag(v) + 1
    # leading zeros then the value itself, whose top bit is the marker '1'
    out.write(code, 2 * code.bit_length() - 1)


def eg0_decode_signed(inp: BitReader) -> int:
    zeros = inp.count_zeros(64)
    code = inp.read(zeros + 1) - 1
    q, r = (code + 1) >> 1, code & 1
    return q if r else -q


def encode_unit(residuals: Sequence[int], out: BitWriter) -> Category:
    c = category_for(max(map(abs, residuals), default=0))
    write_header(c, out)
    for v in residuals:
        encode_residual(v, c, out)
    return c


def decode_unit(count: int, inp: BitReader) -> list[int]:
    c = read_header(inp)
    return [decode_residual(c, inp) for _ in range(count)]


def unit_cost(residuals: Iterable[int]) -> int:
    residuals = list(residuals)
    c = category_for(max(map(abs, residuals), default=0))
    return len(c.header) + sum(residual_code_length(v, c) for v in residuals)


@lru_cache(maxsize=None)
def block_units(height: int, width: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """(row, col) positions of each 4x4 unit, raster order, (0, 0) excluded."""
    units = []
    for uy in range(0, height, UNIT):
        for ux in range(0, width, UNIT):
            pos = [(y, x)
                   for y in range(uy, min(uy + UNIT, height))
                   for x in range(ux, min(ux + UNIT, width))
                   if y or x]
            if pos:
                units.append(tuple(pos))
    return tuple(units)


def encode_block_residuals(grid: Sequence[Sequence[int]], out: BitWriter) -> None:
    """Code a residual grid unit by unit; ``grid[0][0]`` is ignored."""
    for unit in block_units(len(grid), len(grid[0])):
        encode_unit([grid[y][x] for y, x in unit], out)


def decode_block_residuals(height: int, width: int, inp: BitReader) -> list[list[int]]:
    grid = [[0] * width for _ in range(height)]
    for unit in block_units(height, width):
        for (y, x), v in zip(unit, decode_unit(len(unit), inp)):
            grid[y][x] = v
    return grid


def block_residual_cost(grid: Sequence[Sequence[int]]) -> int:
    """Bits ``encode_block_residuals`` would emit for ``grid``."""
    return sum(unit_cost(grid[y][x] for y, x in unit)
               for unit in block_units(len(grid), len(grid[0])))
