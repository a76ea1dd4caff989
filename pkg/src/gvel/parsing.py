"""Byte-level scanners, custom number parsers, and the MTX header parser.

The scanners and parsers are the tokenizers for both the parallel reader
and the sequential oracle. They operate on uint8 numpy views and are
compiled ``nogil`` so worker threads can run them concurrently; thin
Python wrappers expose them with error handling.

Any byte that is not a digit, sign, or decimal point acts as a field
separator, so tabs, repeated spaces, and CR bytes in CRLF files are all
skipped without special cases.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import FormatError

# Maximal uint64 split for the overflow check: value*10 + d overflows iff
# value > MAX//10, or value == MAX//10 and d > MAX%10.
_U64_DIV10 = np.uint64((2**64 - 1) // 10)
_U64_MOD10 = np.uint64((2**64 - 1) % 10)
_U64_TEN = np.uint64(10)

# 10**k is exact in float64 for k <= 22.
_POW10 = 10.0 ** np.arange(23)

_NL = 10  # LF terminates a line; CR is skipped as an ordinary separator


def _byte_view(data) -> np.ndarray:
    """Coerce MappedBytes / bytes / ndarray into a uint8 array view."""
    if isinstance(data, np.ndarray):
        return data
    view = getattr(data, "view", None)
    if isinstance(view, np.ndarray):
        return view
    return np.frombuffer(data, dtype=np.uint8)


def _check_range(view, start, stop):
    if not 0 <= start <= stop <= view.shape[0]:
        raise ValueError(f"invalid scan range [{start}, {stop}) for {view.shape[0]} bytes")


@njit(inline="always", nogil=True, cache=True)
def _find_next_digit(data, frm, to):
    j = frm
    while j < to:
        b = data[j]
        if 48 <= b <= 57:
            return j
        if (b == 45 or b == 43) and j + 1 < to and 48 <= data[j + 1] <= 57:
            return j
        j += 1
    return to


@njit(inline="always", nogil=True, cache=True)
def _find_next_line(data, frm, to):
    j = frm
    while j < to and data[j] != _NL:
        j += 1
    if j < to:
        return j + 1
    return to


@njit(inline="always", nogil=True, cache=True)
def _parse_u64(data, frm, to):
    """Returns (value, next, err): err 1 = overflow, err 2 = no digit at frm."""
    value = np.uint64(0)
    j = frm
    if j >= to or not (48 <= data[j] <= 57):
        return value, frm, 2
    while j < to and 48 <= data[j] <= 57:
        d = np.uint64(data[j] - 48)
        if value > _U64_DIV10 or (value == _U64_DIV10 and d > _U64_MOD10):
            return value, j, 1
        value = value * _U64_TEN + d
        j += 1
    return value, j, 0


@njit(inline="always", nogil=True, cache=True)
def _parse_f64(data, frm, to):
    """Returns (value, next, err): err 1 = malformed token."""
    j = frm
    sign = 1.0
    if j < to and (data[j] == 45 or data[j] == 43):
        if data[j] == 45:
            sign = -1.0
        j += 1
    mant = np.uint64(0)
    ndig = 0
    dexp = 0
    seen = False
    while j < to and 48 <= data[j] <= 57:
        seen = True
        d = np.uint64(data[j] - 48)
        if ndig < 19:
            if not (mant == np.uint64(0) and d == np.uint64(0)):
                mant = mant * _U64_TEN + d
                ndig += 1
        else:
            dexp += 1
        j += 1
    if j < to and data[j] == 46:  # '.'
        j += 1
        while j < to and 48 <= data[j] <= 57:
            seen = True
            d = np.uint64(data[j] - 48)
            if ndig < 19:
                if mant == np.uint64(0) and d == np.uint64(0):
                    dexp -= 1
                else:
                    mant = mant * _U64_TEN + d
                    ndig += 1
                    dexp -= 1
            j += 1
    if not seen:
        return 0.0, frm, 1
    if j < to and (data[j] == 101 or data[j] == 69):  # 'e' / 'E'
        k = j + 1
        esign = 1
        if k < to and (data[k] == 45 or data[k] == 43):
            if data[k] == 45:
                esign = -1
            k += 1
        if k >= to or not (48 <= data[k] <= 57):
            return 0.0, j, 1
        e = 0
        while k < to and 48 <= data[k] <= 57:
            if e < 100000:
                e = e * 10 + (data[k] - 48)
            k += 1
        dexp += esign * e
        j = k
    if dexp > 5000:
        dexp = 5000
    elif dexp < -5000:
        dexp = -5000
    m = np.float64(mant)
    if dexp >= 0:
        if dexp <= 22:
            value = m * _POW10[dexp]
        else:
            value = m * (10.0**dexp)
    elif dexp >= -22:
        value = m / _POW10[-dexp]
    else:
        value = m * (10.0**dexp)
    return sign * value, j, 0


def find_next_digit(data, start: int, stop: int) -> int:
    """Smallest offset in [start, stop) holding a digit, or a sign byte
    directly followed by a digit; ``stop`` if there is none."""
    view = _byte_view(data)
    _check_range(view, start, stop)
    return int(_find_next_digit(view, start, stop))


def find_next_line(data, start: int, stop: int) -> int:
    """One past the first newline at or after ``start``, clamped to ``stop``."""
    view = _byte_view(data)
    _check_range(view, start, stop)
    return int(_find_next_line(view, start, stop))


def parse_whole_number(data, start: int, stop: int) -> tuple[int, int]:
    """Parse the maximal digit run at ``start`` as an unsigned 64-bit value.

    Returns (value, next). Raises FormatError on overflow; the byte at
    ``start`` must be a digit (anything else is a caller bug).
    """
    view = _byte_view(data)
    _check_range(view, start, stop)
    value, nxt, err = _parse_u64(view, start, stop)
    if err == 2:
        raise ValueError(f"parse_whole_number: byte at offset {start} is not a digit")
    if err == 1:
        raise FormatError("unsigned integer overflows 64 bits", offset=start)
    return int(value), int(nxt)


def parse_float(data, start: int, stop: int) -> tuple[float, int]:
    """Parse a decimal float token (optional sign, fraction, exponent).

    Returns (value, next). Raises FormatError for a malformed token.
    """
    view = _byte_view(data)
    _check_range(view, start, stop)
    value, nxt, err = _parse_f64(view, start, stop)
    if err:
        raise FormatError("malformed number token", offset=start)
    return float(value), int(nxt)


@dataclass(frozen=True)
class MtxHeader:
    """Parsed Matrix Market banner plus dimension line."""

    rows: int
    cols: int
    entries: int
    symmetric: bool
    weighted: bool


def _line_end(view: np.ndarray, pos: int) -> int:
    n = view.shape[0]
    step = 4096
    i = pos
    while i < n:
        chunk = view[i : min(i + step, n)]
        hits = np.nonzero(chunk == _NL)[0]
        if hits.size:
            return i + int(hits[0])
        i += step
    return n


def _parse_banner(text: str) -> tuple[bool, bool]:
    """Interpret the banner line, returning (symmetric, weighted)."""
    if not text.lower().startswith("%%matrixmarket"):
        raise FormatError("missing %%MatrixMarket banner", offset=0)
    tokens = text.split()
    if len(tokens) < 5:
        raise FormatError("malformed Matrix Market banner", offset=0)
    obj, fmt, field, symmetry = (t.lower() for t in tokens[1:5])
    if obj != "matrix":
        raise FormatError(f"unsupported Matrix Market object '{obj}'", offset=0)
    if fmt != "coordinate":
        raise FormatError(f"only coordinate format is supported, got '{fmt}'", offset=0)
    if field in ("real", "double", "integer"):
        weighted = True
    elif field == "pattern":
        weighted = False
    elif field == "complex":
        raise FormatError("complex fields are not supported", offset=0)
    else:
        raise FormatError(f"unrecognized field '{field}'", offset=0)
    if symmetry == "general":
        symmetric = False
    elif symmetry in ("symmetric", "skew-symmetric"):
        symmetric = True
    elif symmetry == "hermitian":
        raise FormatError("hermitian symmetry is not supported", offset=0)
    else:
        raise FormatError(f"unrecognized symmetry '{symmetry}'", offset=0)
    return symmetric, weighted


def _parse_dimensions(text: str, offset: int) -> tuple[int, int, int]:
    """Interpret the dimension line, returning (rows, cols, entries)."""
    toks = text.split()
    if len(toks) != 3 or not all(t.isdigit() for t in toks):
        raise FormatError("malformed dimension line", offset=offset)
    rows, cols, entries = (int(t) for t in toks)
    if rows != cols:
        raise FormatError(f"adjacency matrix must be square, got {rows}x{cols}", offset=offset)
    return rows, cols, entries


def parse_mtx_header(data) -> tuple[MtxHeader, int]:
    """Parse the banner, skip comments, parse the dimension line.

    Returns (header, body_start) where body_start is the offset of the
    first data byte. Symmetric covers both "symmetric" and
    "skew-symmetric"; weighted means the field is not "pattern". Unlike
    loaders that ignore the banner, the declared attributes are honored.
    """
    view = _byte_view(data)
    end = _line_end(view, 0)
    symmetric, weighted = _parse_banner(view[:end].tobytes().decode("ascii", errors="replace"))

    n = view.shape[0]
    pos = min(end + 1, n)
    while pos < n:
        end = _line_end(view, pos)
        line = view[pos:end].tobytes().decode("ascii", errors="replace")
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            pos = min(end + 1, n)
            continue
        rows, cols, entries = _parse_dimensions(stripped, pos)
        body_start = min(end + 1, n)
        return MtxHeader(rows, cols, entries, symmetric, weighted), body_start
    raise FormatError("missing dimension line", offset=pos)
