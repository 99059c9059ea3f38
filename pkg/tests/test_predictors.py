import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from irbrc.errors import ShapeMismatch
from irbrc.predictors import (EdgeComponents, NeighborSet, PredictorKind, ResidualBlock,
                              edge_components, predict_block, predict_edge, predict_gap, predict_med,
                              reconstruct_block, select_reference)

from conftest import GuardedRows, block_family

samples = st.integers(0, 255)
KINDS = list(PredictorKind)


def select_oracle(dx, dy):
    """Reference selection written with products instead of shifts."""
    a, b = abs(dx), abs(dy)
    hits = []
    if b > 2 * a:
        hits.append(3)
    if 2 * b <= a:
        hits.append(1)
    if a < 2 * b <= 4 * a:
        same_sign = (dx >= 0) == (dy >= 0)
        hits.append(4 if same_sign else 2)
    return hits


def gap_oracle(W, WW, N, NN, NW, NE, NNE):
    """Direct CALIC GAP evaluation with exact fractions truncated toward zero."""
    t = math.trunc
    dh = abs(W - WW) + abs(N - NW) + abs(N - NE)
    dv = abs(W - NW) + abs(N - NN) + abs(NE - NNE)
    if dv - dh > 80:
        p = W
    elif dv - dh < -80:
        p = N
    else:
        p = t(Fraction(W + N, 2)) + t(Fraction(NE - NW, 4))
        if dv - dh > 32:
            p = t(Fraction(p + W, 2))
        elif dv - dh > 8:
            p = t(Fraction(3 * p + W, 4))
        elif dv - dh < -32:
            p = t(Fraction(p + N, 2))
        elif dv - dh < -8:
            p = t(Fraction(3 * p + N, 4))
    return max(0, min(255, p))


@pytest.mark.parametrize("r1,r2,r3,expected", [
    (10, 10, 10, (0, 0)),
    (10, 10, 20, (0, 10)),
    (20, 10, 10, (10, 0)),
])
def test_edge_components(r1, r2, r3, expected):
    assert edge_components(NeighborSet(r1, r2, r3, r3)) == EdgeComponents(*expected)


@pytest.mark.parametrize("dx,dy,ref", [
    (0, 0, 1), (0, 10, 3), (10, 0, 1), (10, 10, 4), (-10, 10, 2),
    (10, -10, 2), (-10, -10, 4), (0, -1, 3), (3, 1, 1), (3, 2, 4), (3, 6, 4), (3, 7, 3),
])
def test_select_reference_cases(dx, dy, ref):
    assert select_reference(EdgeComponents(dx, dy)) == ref


def test_select_reference_exhaustive():
    for dx in range(-255, 256):
        for dy in range(-255, 256):
            hits = select_oracle(dx, dy)
            assert len(hits) == 1, (dx, dy, hits)
            assert select_reference(EdgeComponents(dx, dy)) == hits[0]


@pytest.mark.parametrize("n,expected", [
    ((128, 128, 128, 128), 128),
    ((10, 10, 20, 30), 20),
    ((20, 10, 20, 30), 30),
])
def test_predict_edge(n, expected):
    assert predict_edge(NeighborSet(*n)) == expected


@given(samples, samples, samples, samples)
def test_predict_edge_returns_a_reference(r1, r2, r3, r4):
    assert predict_edge(NeighborSet(r1, r2, r3, r4)) in (r1, r2, r3, r4)


@pytest.mark.parametrize("args,expected", [((10, 10, 10), 10), ((10, 20, 5), 20), ((10, 20, 15), 15),
                                           ((10, 20, 25), 10)])
def test_predict_med(args, expected):
    assert predict_med(*args) == expected


@given(samples, samples, samples)
def test_med_is_median(w, n, nw):
    # the LOCO-I predictor equals median(W, N, W + N - NW)
    assert predict_med(w, n, nw) == sorted([w, n, w + n - nw])[1]


@pytest.mark.parametrize("ctx,expected", [
    ((50,) * 7, 50),
    ((100, 0, 0, 0, 0, 0, 0), 50),          # d_v - d_h = 0: blended average
    ((10, 10, 20, 20, 10, 20, 20), 17),     # d_h=10, d_v=0
    ((0, 0, 200, 0, 0, 0, 0), 200),         # d_v - d_h = -200 -> N
    ((200, 0, 0, 0, 200, 0, 0), 0),         # d_v - d_h = -400 -> N
])
def test_predict_gap_golden(ctx, expected):
    assert gap_oracle(*ctx) == expected
    assert predict_gap(*ctx) == expected


@given(st.tuples(*[samples] * 7))
def test_gap_matches_oracle(ctx):
    p = predict_gap(*ctx)
    assert p == gap_oracle(*ctx)
    assert 0 <= p <= 255


@pytest.mark.parametrize("kind", KINDS)
def test_constant_block_zero_residuals(kind):
    rb = predict_block(np.full((8, 8), 128), kind)
    assert rb.first_sample == 128
    assert rb.residuals == (0,) * 63


def test_two_by_two_edge_trace():
    rb = predict_block(np.array([[10, 20], [30, 40]]), PredictorKind.EDGE)
    assert rb.first_sample == 10
    assert rb.residuals == (10, 20, 10)
    assert rb.side_info is None


def test_one_row_block_is_horizontal_dpcm():
    row = np.array([[5, 9, 3, 3, 200, 0, 1, 7]])
    for kind in KINDS:
        rb = predict_block(row, kind)
        assert rb.residuals == tuple(np.diff(row[0]).tolist())


def test_one_column_block_is_vertical_dpcm():
    col = np.array([[5], [9], [3], [250]])
    for kind in KINDS:
        assert predict_block(col, kind).residuals == (4, -6, 247)


def test_hd_predicts_left_inside():
    b = np.array([[1, 2, 3], [10, 20, 30], [100, 110, 120]])
    rb = predict_block(b, PredictorKind.HD)
    assert rb.grid() == [[0, 1, 1], [9, 10, 10], [90, 10, 10]]


def test_hvd_picks_vertical_on_vertical_stripes():
    b = np.tile(np.array([0, 200, 0, 200, 0, 200, 0, 200]), (8, 1))
    rb = predict_block(b, PredictorKind.HVD)
    assert rb.side_info == 1
    assert all(v == 0 for row in rb.grid()[1:] for v in row)


def test_hvd_picks_horizontal_on_flat_and_rows():
    assert predict_block(np.full((4, 4), 7), PredictorKind.HVD).side_info == 0
    b = np.repeat(np.array([[0], [90], [0], [90]]), 4, axis=1)
    assert predict_block(b, PredictorKind.HVD).side_info == 0


def test_edge_right_column_uses_r3():
    # with r4 := r3 in the last column the edge rule sees a vertical edge here
    b = np.array([[0, 0, 100], [0, 0, 0]])
    rb = predict_block(b, PredictorKind.EDGE)
    # at (1,2): r1=0, r2=0, r3=100 -> Dy=100 > 0 -> r3 = 100
    assert rb.grid()[1][2] == -100


def test_reconstruct_zero_residuals():
    rb = ResidualBlock(0, (0,) * 63, 8, 8)
    for kind in KINDS:
        assert (reconstruct_block(rb, kind) == 0).all()


def test_reconstruct_shape_mismatch():
    rb = ResidualBlock(0, (0,) * 3, 2, 2)
    with pytest.raises(ShapeMismatch):
        reconstruct_block(rb, PredictorKind.EDGE, (4, 4))
    with pytest.raises(ShapeMismatch):
        ResidualBlock(0, (0,) * 4, 2, 2)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("shape", [(8, 8), (4, 4), (16, 16), (1, 1), (1, 8), (8, 1), (3, 5), (2, 2)])
def test_roundtrip_block_family(kind, shape, rng):
    for b in block_family(rng, *shape):
        rb = predict_block(b, kind)
        assert all(-255 <= v <= 255 for v in rb.residuals)
        assert np.array_equal(reconstruct_block(rb, kind), b)


@given(st.sampled_from(KINDS), st.integers(1, 16), st.integers(1, 16), st.data())
def test_roundtrip_property(kind, h, w, data):
    flat = data.draw(st.lists(samples, min_size=h * w, max_size=h * w))
    b = np.array(flat, dtype=np.uint8).reshape(h, w)
    assert np.array_equal(reconstruct_block(predict_block(b, kind), kind), b)


@pytest.mark.parametrize("kind", KINDS)
def test_prediction_stays_inside_block(kind, rng):
    for shape in [(8, 8), (16, 16), (1, 5), (5, 1), (2, 3), (16, 3)]:
        for b in block_family(rng, *shape):
            guarded = predict_block(GuardedRows(b), kind)
            assert guarded == predict_block(b, kind)


def test_block_ignores_surroundings(rng):
    frame = rng.integers(0, 256, size=(24, 24), dtype=np.uint8)
    inner = frame[8:16, 8:16].copy()
    for kind in KINDS:
        other = frame.copy()
        other[:8] = 255 - other[:8]
        other[:, :8] = 0
        assert predict_block(frame[8:16, 8:16], kind) == predict_block(inner, kind)
        assert predict_block(other[8:16, 8:16], kind) == predict_block(inner, kind)


def test_parse_kind():
    assert PredictorKind.parse("med") is PredictorKind.MED
    with pytest.raises(ValueError):
        PredictorKind.parse("dip")
