import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


class GuardedRow(list):
    """List that refuses negative or out-of-range reads instead of wrapping."""

    def __getitem__(self, i):
        if isinstance(i, slice):
            raise AssertionError("slice read on guarded block row")
        if not 0 <= i < len(self):
            raise AssertionError(f"out-of-block column read {i}")
        return super().__getitem__(i)


class GuardedRows(list):
    def __init__(self, arr):
        super().__init__(GuardedRow(r) for r in np.asarray(arr).tolist())

    def __getitem__(self, i):
        if isinstance(i, slice):
            raise AssertionError("slice read on guarded block")
        if not 0 <= i < len(self):
            raise AssertionError(f"out-of-block row read {i}")
        return super().__getitem__(i)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def text_block(rng, h, w):
    """Bilevel block with a few strokes, like rendered text."""
    bg, fg = rng.choice(256, size=2, replace=False)
    b = np.full((h, w), bg, dtype=np.uint8)
    for _ in range(3):
        if rng.random() < 0.5:
            b[int(rng.integers(0, h)), :] = fg
        else:
            b[:, int(rng.integers(0, w))] = fg
    return b


def block_family(rng, h, w):
    """Random, gradient, text-like and saturated blocks of one shape."""
    yy, xx = np.mgrid[0:h, 0:w]
    return [
        rng.integers(0, 256, size=(h, w), dtype=np.uint8),
        ((xx * 7 + yy * 3) % 256).astype(np.uint8),
        text_block(rng, h, w),
        np.where((xx + yy) % 2, 255, 0).astype(np.uint8),
        np.full((h, w), 255, dtype=np.uint8),
        np.zeros((h, w), dtype=np.uint8),
    ]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
