"""High-level graph loading: map, parse header, read, convert.

Ties the stages together for the CLI, the benchmark harness, and library
users, and resolves per-format config defaults (MTX headers dictate the
symmetric/weighted flags and 1-based ids; headerless edgelists default to
0-based ids with flags supplied by the caller).
"""

import time
from dataclasses import dataclass, replace

import numpy as np

from .csr import Csr, canonicalize, convert_to_csr
from .edgelist import EdgeListChunks, LoadConfig, PartitionedDegrees, read_edgelist
from .mapping import MappedBytes, map_file
from .parsing import MtxHeader, parse_mtx_header
from .reference import prescan_el


@dataclass
class Prepared:
    """A mapped input with its header and fully-resolved config."""

    data: MappedBytes
    header: MtxHeader
    body_start: int
    cfg: LoadConfig


@dataclass
class LoadResult:
    csr: Csr
    header: MtxHeader
    cfg: LoadConfig
    edgelist_seconds: float
    total_seconds: float


def prepare(path, fmt: str = "mtx", cfg: LoadConfig | None = None,
            one_based: bool | None = None,
            vertices: int | None = None,
            edges: int | None = None) -> Prepared:
    """Map the file and resolve header + config for the requested format.

    For ``fmt="el"`` the vertex/edge counts are taken from the arguments
    or discovered with a sequential pre-scan.
    """
    if cfg is None:
        cfg = LoadConfig()
    data = map_file(path)
    if fmt == "mtx":
        header, body_start = parse_mtx_header(data)
        cfg = replace(cfg, symmetric=header.symmetric, weighted=header.weighted,
                      one_based=True if one_based is None else one_based)
    elif fmt == "el":
        ob = False if one_based is None else one_based
        if vertices is None or edges is None:
            max_id, count = prescan_el(path)
            if edges is None:
                edges = count
            if vertices is None:
                vertices = (max_id if ob else max_id + 1) if count else 0
        cfg = replace(cfg, one_based=ob)
        header = MtxHeader(vertices, vertices, edges, cfg.symmetric, cfg.weighted)
        body_start = 0
    else:
        raise ValueError(f"unknown format '{fmt}'")
    return Prepared(data, header, body_start, cfg)


def load_edgelist(path, fmt: str = "mtx", cfg: LoadConfig | None = None,
                  **kw) -> tuple[EdgeListChunks, PartitionedDegrees, Prepared, float]:
    """Timed map + parallel read; the caller owns (and closes) the mapping."""
    t0 = time.perf_counter()
    prep = prepare(path, fmt, cfg, **kw)
    chunks, pdeg = read_edgelist(prep.data, prep.body_start, prep.header, prep.cfg)
    return chunks, pdeg, prep, time.perf_counter() - t0


def load_csr(path, fmt: str = "mtx", cfg: LoadConfig | None = None,
             canonical: bool = False, **kw) -> LoadResult:
    """Full pipeline to a global CSR; timings cover map + parse (+ convert)."""
    t0 = time.perf_counter()
    chunks, pdeg, prep, t_el = load_edgelist(path, fmt, cfg, **kw)
    csr = convert_to_csr(chunks, pdeg, prep.header, prep.cfg)
    total = time.perf_counter() - t0
    prep.data.close()
    if canonical:
        csr = canonicalize(csr)
    return LoadResult(csr, prep.header, prep.cfg, t_el, total)


def self_loop_count(csr: Csr) -> int:
    owners = np.repeat(np.arange(csr.num_vertices, dtype=np.int64), csr.degrees())
    return int(np.count_nonzero(owners == csr.edge_keys))


def duplicate_edge_count(canonical_csr: Csr) -> int:
    """Repeated (source, target[, weight]) entries in a canonicalized CSR."""
    c = canonical_csr
    if c.num_edges < 2:
        return 0
    owners = np.repeat(np.arange(c.num_vertices, dtype=np.int64), c.degrees())
    same = (owners[1:] == owners[:-1]) & (c.edge_keys[1:] == c.edge_keys[:-1])
    if c.edge_values is not None:
        same &= c.edge_values[1:] == c.edge_values[:-1]
    return int(np.count_nonzero(same))
