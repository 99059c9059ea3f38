"""Exception hierarchy shared by every irbrc module."""


class IRBRError(Exception):
    """Base class for all codec errors."""


class SizeMismatch(IRBRError, ValueError):
    pass


class InvalidDescriptor(IRBRError, ValueError):
    pass


class InvalidBlockSize(IRBRError, ValueError):
    pass


class ShapeMismatch(IRBRError, ValueError):
    pass


class OutOfRange(IRBRError, ValueError):
    pass


class TruncatedStream(IRBRError, EOFError):
    pass


class SlotOverflow(IRBRError, AssertionError):
    pass


class IndexOutOfRange(IRBRError, IndexError):
    pass


class RectOutOfBounds(IRBRError, IndexError):
    pass


class EmptyContainer(IRBRError, ValueError):
    pass


class CorruptContainer(IRBRError, ValueError):
    """Container bytes are not a readable IRBR container."""


class BadMagic(CorruptContainer):
    pass


class BadVersion(CorruptContainer):
    pass
