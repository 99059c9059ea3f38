"""Pixel-wise predictors operating strictly inside one block.

Every predictor shares the same border handling: the first sample of a block
is kept raw, the rest of the first row is predicted from the left neighbour
and the rest of the first column from the sample above.  Only the interior
samples differ between predictor kinds.

Blocks are passed as row sequences (``block[y][x]``); numpy arrays are
converted with ``tolist``.  Indices are never negative and never leave the
block, so a block can be decoded without touching its neighbours.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .entropy import block_residual_cost
from .errors import OutOfRange, ShapeMismatch


class PredictorKind(enum.IntEnum):
    EDGE = 0
    HD = 1
    HVD = 2
    MED = 3
    GAP = 4

    @classmethod
    def parse(cls, name: "str | PredictorKind") -> "PredictorKind":
        if isinstance(name, int):
            return cls(name)
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise ValueError(f"unknown predictor {name!r}; choose from "
                             f"{', '.join(k.name.lower() for k in cls)}") from None


class NeighborSet(NamedTuple):
    r1: int  # left
    r2: int  # above-left
    r3: int  # above
    r4: int  # above-right, or r3 in the last column


class EdgeComponents(NamedTuple):
    dx: int
    dy: int


# HVD direction bit
HORIZONTAL = 0
VERTICAL = 1


def edge_components(n: NeighborSet) -> EdgeComponents:
    """Edge direction from the modified 2x2 Roberts cross.

    The vertical edge component is the horizontal gradient above the current
    sample and vice versa.
    """
    return EdgeComponents(dx=n.r1 - n.r2, dy=n.r3 - n.r2)


def select_reference(e: EdgeComponents) -> int:
    """Index (1..4) of the reference lying along the edge direction."""
    adx = abs(e.dx)
    ady = abs(e.dy)
    if ady > adx << 1:
        return 3
    if ady <= adx >> 1:
        return 1
    # zero counts as non-negative
    return 2 if (e.dx < 0) != (e.dy < 0) else 4


def predict_edge(n: NeighborSet) -> int:
    return n[select_reference(edge_components(n)) - 1]


def _edge(r1: int, r2: int, r3: int, r4: int) -> int:
    # inlined predict_edge for the block loops
    dx = r1 - r2
    dy = r3 - r2
    adx = dx if dx >= 0 else -dx
    ady = dy if dy >= 0 else -dy
    if ady > adx << 1:
        return r3
    if ady <= adx >> 1:
        return r1
    return r2 if (dx < 0) != (dy < 0) else r4


def predict_med(left: int, above: int, above_left: int) -> int:
    """JPEG-LS median edge detector."""
    lo, hi = (left, above) if left <= above else (above, left)
    if above_left >= hi:
        return lo
    if above_left <= lo:
        return hi
    return min(255, max(0, left + above - above_left))


def _tdiv(a: int, b: int) -> int:
    q = abs(a) // b
    return q if a >= 0 else -q


def predict_gap(w: int, ww: int, n: int, nn: int, nw: int, ne: int, nne: int) -> int:
    """CALIC gradient-adjusted prediction; divisions truncate toward zero."""
    dh = abs(w - ww) + abs(n - nw) + abs(n - ne)
    dv = abs(w - nw) + abs(n - nn) + abs(ne - nne)
    diff = dv - dh
    if diff > 80:
        p = w
    elif diff < -80:
        p = n
    else:
        p = _tdiv(w + n, 2) + _tdiv(ne - nw, 4)
        if diff > 32:
            p = _tdiv(p + w, 2)
        elif diff > 8:
            p = _tdiv(3 * p + w, 4)
        elif diff < -32:
            p = _tdiv(p + n, 2)
        elif diff < -8:
            p = _tdiv(3 * p + n, 4)
    return min(255, max(0, p))


def gap_context(rows: Sequence[Sequence[int]], y: int, x: int, width: int) -> tuple[int, ...]:
    """(W, WW, N, NN, NW, NE, NNE) for an interior sample, clipped to the block.

    Missing neighbours take the nearest in-block sample: WW -> W, NN -> N,
    NE -> N, NNE -> NE on row 1 and NNE -> NN in the last column.
    """
    up = rows[y - 1]
    w = rows[y][x - 1]
    ww = rows[y][x - 2] if x >= 2 else w
    n = up[x]
    nw = up[x - 1]
    ne = up[x + 1] if x + 1 < width else n
    if y >= 2:
        up2 = rows[y - 2]
        nn = up2[x]
        nne = up2[x + 1] if x + 1 < width else nn
    else:
        nn = n
        nne = ne
    return w, ww, n, nn, nw, ne, nne


def _interior(rows, y: int, x: int, width: int, kind: PredictorKind, direction: int) -> int:
    up = rows[y - 1]
    if kind == PredictorKind.EDGE:
        r3 = up[x]
        return _edge(rows[y][x - 1], up[x - 1], r3, up[x + 1] if x + 1 < width else r3)
    if kind == PredictorKind.MED:
        return predict_med(rows[y][x - 1], up[x], up[x - 1])
    if kind == PredictorKind.GAP:
        return predict_gap(*gap_context(rows, y, x, width))
    if kind == PredictorKind.HVD and direction == VERTICAL:
        return up[x]
    return rows[y][x - 1]


@dataclass(frozen=True)
class ResidualBlock:
    """Prediction output for one block.

    ``residuals`` is in raster order with position (0, 0) omitted;
    ``side_info`` carries the HVD direction bit and is ``None`` otherwise.
    """

    first_sample: int
    residuals: tuple[int, ...]
    height: int
    width: int
    side_info: int | None = None

    def __post_init__(self):
        if len(self.residuals) != self.height * self.width - 1:
            raise ShapeMismatch(f"{len(self.residuals)} residuals for a "
                                f"{self.width}x{self.height} block")

    def grid(self) -> list[list[int]]:
        """Residuals as rows, with 0 at the first-sample position."""
        flat = (0,) + self.residuals
        w = self.width
        return [list(flat[i:i + w]) for i in range(0, len(flat), w)]


def _as_rows(block) -> list:
    if isinstance(block, np.ndarray):
        if block.ndim != 2:
            raise ShapeMismatch(f"block must be 2-D, got shape {block.shape}")
        return block.astype(np.int64).tolist()
    return block


def _residual_grid(rows, height: int, width: int, kind: PredictorKind, direction: int) -> list[list[int]]:
    res = [[0] * width for _ in range(height)]
    first = rows[0]
    res0 = res[0]
    for x in range(1, width):
        res0[x] = first[x] - first[x - 1]
    for y in range(1, height):
        row = rows[y]
        out = res[y]
        out[0] = row[0] - rows[y - 1][0]
        for x in range(1, width):
            out[x] = row[x] - _interior(rows, y, x, width, kind, direction)
    return res


def predict_block(block, kind: PredictorKind) -> ResidualBlock:
    """Residuals of ``block`` under ``kind``.

    HVD codes the block both ways and keeps whichever direction costs fewer
    VLC bits, horizontal on ties.
    """
    kind = PredictorKind(kind)
    rows = _as_rows(block)
    height = len(rows)
    width = len(rows[0]) if height else 0
    if height < 1 or width < 1:
        raise ShapeMismatch("block must hold at least one sample")
    side_info = None
    if kind == PredictorKind.HVD:
        horiz = _residual_grid(rows, height, width, kind, HORIZONTAL)
        vert = _residual_grid(rows, height, width, kind, VERTICAL)
        if block_residual_cost(vert) < block_residual_cost(horiz):
            res, side_info = vert, VERTICAL
        else:
            res, side_info = horiz, HORIZONTAL
    else:
        res = _residual_grid(rows, height, width, kind, HORIZONTAL)
    flat = tuple(v for r in res for v in r)[1:]
    return ResidualBlock(int(rows[0][0]), flat, height, width, side_info)


def reconstruct_block(rb: ResidualBlock, kind: PredictorKind,
                      shape: tuple[int, int] | None = None) -> np.ndarray:
    """Invert ``predict_block``; returns a uint8 array of ``(height, width)``."""
    kind = PredictorKind(kind)
    if shape is not None and tuple(shape) != (rb.height, rb.width):
        raise ShapeMismatch(f"residual block is {rb.height}x{rb.width}, expected {tuple(shape)}")
    direction = rb.side_info if rb.side_info is not None else HORIZONTAL
    return reconstruct_from_grid(rb.first_sample, rb.grid(), kind, direction)


def reconstruct_from_grid(first_sample: int, res: Sequence[Sequence[int]],
                          kind: PredictorKind, direction: int = HORIZONTAL) -> np.ndarray:
    height = len(res)
    width = len(res[0])
    rows = [[0] * width for _ in range(height)]
    row = rows[0]
    row[0] = first_sample
    for x in range(1, width):
        row[x] = row[x - 1] + res[0][x]
    for y in range(1, height):
        row = rows[y]
        rrow = res[y]
        row[0] = rows[y - 1][0] + rrow[0]
        for x in range(1, width):
            row[x] = _interior(rows, y, x, width, kind, direction) + rrow[x]
    out = np.array(rows, dtype=np.int64)
    if out.min() < 0 or out.max() > 255:
        raise OutOfRange("residuals reconstruct samples outside [0, 255]")
    return out.astype(np.uint8)
