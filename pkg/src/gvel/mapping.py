"""Memory-mapped byte views and newline-aligned block partitioning.

Files are mapped read-only and carved into blocks of ``beta`` bytes whose
boundaries are shifted forward onto line starts, so each line of the file
belongs to exactly one block and blocks can be parsed independently.
"""

import mmap
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import MappingError
from .parsing import _byte_view, _find_next_line

DEFAULT_BETA = 262144  # block size in bytes


class BlockRange(NamedTuple):
    begin: int
    end: int


class MappedBytes:
    """Immutable byte view of a whole file.

    Backed by an ``mmap`` when the platform provides one, otherwise by an
    owned in-memory buffer with identical semantics. ``view`` exposes the
    bytes as a read-only uint8 numpy array shared by all workers.
    """

    def __init__(self, view: np.ndarray, mm: mmap.mmap | None = None, path=None):
        view = view.view(np.uint8)
        view.flags.writeable = False
        self.view = view
        self.path = path
        self._mm = mm

    @property
    def length(self) -> int:
        return self.view.shape[0]

    def __len__(self) -> int:
        return self.view.shape[0]

    def close(self) -> None:
        self.view = np.empty(0, dtype=np.uint8)
        if self._mm is not None:
            try:
                self._mm.close()
            except BufferError:
                pass  # outstanding views keep the map alive until they drop
            self._mm = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False


def map_file(path) -> MappedBytes:
    """Map ``path`` read-only and advise the kernel to read it ahead.

    Missing or unreadable paths raise the usual OSError subclasses. A
    failed mapping falls back to reading the whole file into an owned
    buffer; MappingError is raised only if that fallback fails as well.
    """
    with open(path, "rb") as f:
        try:
            mm = mmap.mmap(f.fileno(), 0, access=mmap.ACCESS_READ)
        except (ValueError, OSError):
            # Zero-length files cannot be mapped; other failures fall back too.
            try:
                buf = f.read()
            except OSError as exc:
                raise MappingError(f"cannot map or read {path}: {exc}") from exc
            return MappedBytes(np.frombuffer(buf, dtype=np.uint8), path=path)
    try:
        mm.madvise(mmap.MADV_WILLNEED)
    except (AttributeError, OSError):
        pass  # hint only; absence never changes behavior
    return MappedBytes(np.frombuffer(mm, dtype=np.uint8), mm=mm, path=path)


@njit(inline="always", nogil=True, cache=True)
def _block_bounds(data, origin, i, beta, length):
    """Newline-aligned bounds of the block starting at raw offset origin+i.

    Both ends shift forward past any partial line, so consecutive blocks
    tile the lines of [origin, length) exactly once.
    """
    b = origin + i
    e = b + beta
    if e > length:
        e = length
    if b != origin and data[b - 1] != 10:
        b = _find_next_line(data, b, length)
    if e != origin and data[e - 1] != 10:
        e = _find_next_line(data, e, length)
    return b, e


def block_range(data, i: int, beta: int) -> BlockRange:
    """Line-aligned half-open range for the block beginning at offset ``i``.

    Iterating i over 0, beta, 2*beta, ... yields ranges that cover every
    line exactly once; a block fully consumed by its predecessor comes back
    empty.
    """
    view = _byte_view(data)
    length = view.shape[0]
    if not 0 <= i < length:
        raise ValueError(f"block offset {i} outside [0, {length})")
    if beta < 1:
        raise ValueError("beta must be >= 1")
    b, e = _block_bounds(view, 0, i, beta, length)
    return BlockRange(int(b), int(e))
