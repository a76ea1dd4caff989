"""Sequential reference loader: the correctness oracle for the parallel path.

Reads the file line by line through a buffered reader, tokenizing each
line with the same scanners the parallel reader uses, and builds the CSR
by the textbook count / scan / stable-fill route. Deterministic: the
adjacency of every vertex comes out in file order. Performance is a
non-goal here; this exists to define correct output and to serve as the
single-thread baseline.
"""

from dataclasses import dataclass

import numpy as np

from .csr import Csr
from .edgelist import _ERR_MESSAGES, LoadConfig
from .errors import FormatError
from .parsing import MtxHeader, _find_next_digit, _parse_banner, _parse_dimensions, _parse_f64, _parse_u64


@dataclass
class FlatEdgelist:
    """Edges in file order (reverse edges inline after their original)."""

    sources: np.ndarray
    targets: np.ndarray
    weights: np.ndarray | None

    @property
    def num_edges(self) -> int:
        return self.sources.shape[0]


def _read_header_stream(f) -> tuple[MtxHeader, int]:
    """Consume banner, comments, and dimension line from an open stream."""
    line = f.readline()
    if not line:
        raise FormatError("missing %%MatrixMarket banner", offset=0)
    symmetric, weighted = _parse_banner(line.decode("ascii", errors="replace"))
    offset = len(line)
    while True:
        line = f.readline()
        if not line:
            raise FormatError("missing dimension line", offset=offset)
        stripped = line.decode("ascii", errors="replace").strip()
        if not stripped or stripped.startswith("%"):
            offset += len(line)
            continue
        rows, cols, entries = _parse_dimensions(stripped, offset)
        offset += len(line)
        return MtxHeader(rows, cols, entries, symmetric, weighted), offset


def _fail(code: int, offset: int):
    raise FormatError(_ERR_MESSAGES[code], offset=offset)


def oracle_load(path, cfg: LoadConfig, fmt: str = "mtx",
                vertices: int | None = None,
                edges: int | None = None) -> tuple[FlatEdgelist, Csr]:
    """Load ``path`` sequentially; returns the flat edgelist and its CSR.

    Applies the same id basing, symmetric duplication, and weight rules as
    the parallel reader and raises the same error taxonomy. For headerless
    edgelist files pass ``fmt="el"`` with explicit ``vertices``/``edges``,
    or leave them None to discover both with :func:`prescan_el`.
    """
    with open(path, "rb") as f:
        if fmt == "mtx":
            header, offset = _read_header_stream(f)
            if cfg.symmetric != header.symmetric or cfg.weighted != header.weighted:
                raise ValueError("config symmetric/weighted flags disagree with the header")
        elif fmt == "el":
            if vertices is None or edges is None:
                max_id, count = prescan_el(path)
                if edges is None:
                    edges = count
                if vertices is None:
                    vertices = max_id + (0 if cfg.one_based else 1) if count else 0
            header = MtxHeader(vertices, vertices, edges, cfg.symmetric, cfg.weighted)
            offset = 0
        else:
            raise ValueError(f"unknown format '{fmt}'")

        nv = header.rows
        mult = 2 if cfg.symmetric else 1
        cap = header.entries * mult
        src = np.empty(cap, dtype=np.int64)
        dst = np.empty(cap, dtype=np.int64)
        wts = np.empty(cap, dtype=np.float32) if cfg.weighted else None
        n = 0

        for line in f:
            arr = np.frombuffer(line, dtype=np.uint8)
            ln = arr.shape[0]
            pos = int(_find_next_digit(arr, 0, ln))
            if pos == ln:
                offset += ln
                continue
            tok = pos
            if arr[pos] == 45 or arr[pos] == 43:
                _fail(6, offset + pos)
            u, pos, err = _parse_u64(arr, pos, ln)
            if err:
                _fail(2, offset + tok)
            pos = int(_find_next_digit(arr, int(pos), ln))
            if pos == ln:
                _fail(4, offset + tok)
            tok2 = pos
            if arr[pos] == 45 or arr[pos] == 43:
                _fail(6, offset + pos)
            v, pos, err = _parse_u64(arr, pos, ln)
            if err:
                _fail(2, offset + tok2)
            w = 1.0
            if cfg.weighted:
                pos = int(_find_next_digit(arr, int(pos), ln))
                if pos == ln:
                    _fail(4, offset + tok)
                w, pos, err = _parse_f64(arr, pos, ln)
                if err:
                    _fail(5, offset + tok)
            u = int(u)
            v = int(v)
            if cfg.one_based:
                u -= 1
                v -= 1
            if not 0 <= u < nv:
                _fail(1, offset + tok)
            if not 0 <= v < nv:
                _fail(1, offset + tok2)
            if n >= cap:
                _fail(3, offset + tok)
            src[n] = u
            dst[n] = v
            if wts is not None:
                wts[n] = w
            n += 1
            if cfg.symmetric:
                src[n] = v
                dst[n] = u
                if wts is not None:
                    wts[n] = w
                n += 1
            offset += ln

    if n != cap:
        raise FormatError(
            f"header declares {header.entries} entries ({cap} stored edges) "
            f"but the body produced {n}"
        )

    src = src[:n]
    dst = dst[:n]
    if wts is not None:
        wts = wts[:n]

    counts = np.bincount(src, minlength=nv)
    offsets = np.zeros(nv + 1, dtype=np.int64)
    np.cumsum(counts[:nv], out=offsets[1:])
    order = np.argsort(src, kind="stable")
    keys = dst[order]
    vals = wts[order] if wts is not None else None

    return FlatEdgelist(src, dst, wts), Csr(offsets, keys, vals)


def prescan_el(path) -> tuple[int, int]:
    """Sequentially scan a headerless edgelist: (max raw id, edge lines).

    Defines the discovery semantics for files without a dimension header;
    weights on the lines are ignored.
    """
    max_id = -1
    count = 0
    offset = 0
    with open(path, "rb") as f:
        for line in f:
            arr = np.frombuffer(line, dtype=np.uint8)
            ln = arr.shape[0]
            pos = int(_find_next_digit(arr, 0, ln))
            if pos == ln:
                offset += ln
                continue
            tok = pos
            if arr[pos] == 45 or arr[pos] == 43:
                _fail(6, offset + pos)
            u, pos, err = _parse_u64(arr, pos, ln)
            if err:
                _fail(2, offset + tok)
            pos = int(_find_next_digit(arr, int(pos), ln))
            if pos == ln:
                _fail(4, offset + tok)
            if arr[pos] == 45 or arr[pos] == 43:
                _fail(6, offset + pos)
            v, pos, err = _parse_u64(arr, pos, ln)
            if err:
                _fail(2, offset + tok)
            count += 1
            pair_max = max(int(u), int(v))
            if pair_max > max_id:
                max_id = pair_max
            offset += ln
    return max_id, count
