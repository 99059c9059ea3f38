import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from irbrc.core import (BlockGeometry, ChromaFormat, Frame, FrameDescriptor, Plane, load_raw_frame,
                        load_raw_frames, read_pgm, tile_plane, write_pgm)
from irbrc.errors import InvalidBlockSize, InvalidDescriptor, SizeMismatch


def test_load_monochrome():
    f = load_raw_frame(bytes([0, 1, 2, 3]), FrameDescriptor(2, 2))
    assert len(f.planes) == 1
    assert f.planes[0].samples.tolist() == [[0, 1], [2, 3]]


def test_load_420_plane_sizes():
    f = load_raw_frame(bytes(range(6)), FrameDescriptor(2, 2, ChromaFormat.YUV420))
    assert [p.samples.shape for p in f.planes] == [(2, 2), (1, 1), (1, 1)]
    assert f.planes[1].samples[0, 0] == 4
    assert f.planes[2].samples[0, 0] == 5


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        load_raw_frame(bytes(5), FrameDescriptor(2, 2))


@pytest.mark.parametrize("w,h", [(3, 2), (2, 3), (1, 1)])
def test_odd_420_rejected(w, h):
    with pytest.raises(InvalidDescriptor):
        FrameDescriptor(w, h, ChromaFormat.YUV420)


@pytest.mark.parametrize("w,h", [(0, 4), (4, 0), (-1, 2)])
def test_empty_dims_rejected(w, h):
    with pytest.raises(InvalidDescriptor):
        FrameDescriptor(w, h)


def test_ten_bit_rejected():
    with pytest.raises(InvalidDescriptor):
        FrameDescriptor(4, 4, bit_depth=10)


def test_plane_range_check():
    with pytest.raises(InvalidDescriptor):
        Plane([[0, 256]])
    with pytest.raises(InvalidDescriptor):
        Plane([[-1, 0]])


def test_plane_is_immutable():
    p = Plane(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        p.samples[0, 0] = 1


def test_multi_frame_split():
    desc = FrameDescriptor(2, 2)
    frames = load_raw_frames(bytes(range(12)), desc)
    assert len(frames) == 3
    assert frames[2].planes[0].samples.tolist() == [[8, 9], [10, 11]]
    with pytest.raises(SizeMismatch):
        load_raw_frames(bytes(12), desc, frames=2)
    with pytest.raises(SizeMismatch):
        load_raw_frames(bytes(10), desc)


@given(st.integers(1, 12).map(lambda v: 2 * v), st.integers(1, 12).map(lambda v: 2 * v),
       st.sampled_from(list(ChromaFormat)), st.randoms())
def test_raw_roundtrip(w, h, chroma, rnd):
    desc = FrameDescriptor(w, h, chroma)
    data = bytes(rnd.randrange(256) for _ in range(desc.frame_bytes))
    assert load_raw_frame(data, desc).tobytes() == data


def test_pgm_roundtrip():
    p = Plane(np.arange(12, dtype=np.uint8).reshape(3, 4))
    data = write_pgm(p)
    assert data.startswith(b"P5\n4 3\n255\n")
    f = read_pgm(data)
    assert f.planes[0] == p
    assert f.descriptor.chroma_format == ChromaFormat.MONOCHROME


def test_pgm_with_comment():
    data = b"P5\n# made by hand\n2 1\n255\n\x07\x08"
    assert read_pgm(data).planes[0].samples.tolist() == [[7, 8]]


def test_pgm_rejects_other_maxval():
    with pytest.raises(InvalidDescriptor):
        read_pgm(b"P5\n1 1\n65535\n\x00\x00")
    with pytest.raises(InvalidDescriptor):
        read_pgm(b"P2\n1 1\n255\n0")


def test_tile_exact():
    tiles = tile_plane(Plane(np.zeros((16, 16))), 8)
    assert [(t.x, t.y, t.width, t.height) for t in tiles] == [
        (0, 0, 8, 8), (8, 0, 8, 8), (0, 8, 8, 8), (8, 8, 8, 8)]


def test_tile_clipped_right_edge():
    tiles = tile_plane(Plane(np.zeros((8, 10))), 8)
    assert tiles == [BlockGeometry(8, 0, 0, 8, 8), BlockGeometry(8, 8, 0, 2, 8)]


def test_tile_larger_than_plane():
    assert tile_plane(Plane(np.zeros((8, 8))), 16) == [BlockGeometry(16, 0, 0, 8, 8)]


@pytest.mark.parametrize("n", [0, 2, 5, 32])
def test_bad_block_size(n):
    with pytest.raises(InvalidBlockSize):
        tile_plane((8, 8), n)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_tiling_partition_exhaustive(n):
    for h, w in itertools.product(range(1, 37, 5), range(1, 37, 7)):
        hits = np.zeros((h, w), dtype=int)
        tiles = tile_plane((h, w), n)
        order = [(t.y, t.x) for t in tiles]
        assert order == sorted(order)
        for t in tiles:
            assert t.x % n == 0 and t.y % n == 0
            assert 1 <= t.width <= n and 1 <= t.height <= n
            if t.x + n <= w:
                assert t.width == n
            if t.y + n <= h:
                assert t.height == n
            hits[t.slice()] += 1
        assert (hits == 1).all()


def test_frame_equality():
    a = Frame.from_arrays([np.zeros((2, 2))])
    b = Frame.from_arrays([np.zeros((2, 2))])
    c = Frame.from_arrays([np.ones((2, 2))])
    assert a == b
    assert a != c
