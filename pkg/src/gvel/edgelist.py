"""Single-pass parallel read of the text body into per-worker edgelists.

Workers claim newline-aligned blocks off a shared atomic counter, parse
edges with the custom tokenizers, and append into exclusively-owned
per-worker arrays, counting vertex degrees in ``rho`` shared partition
arrays via atomic increments. The weighted/symmetric flags select one of
four flag-specialized kernels compiled with the flags folded as
constants, so the inner loop never tests them per edge.
"""

import os
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from ._atomics import atomic_fetch_add
from ._threads import run_on_workers
from .errors import FormatError
from .mapping import DEFAULT_BETA
from .parsing import _U64_DIV10, _U64_MOD10, _U64_TEN, MtxHeader, _byte_view, _parse_f64

DEFAULT_RHO = 4  # degree/CSR partition count


def _default_workers() -> int:
    return os.cpu_count() or 1


@dataclass
class LoadConfig:
    """Knobs for the parallel load: block size, partitions, workers, basing."""

    beta: int = DEFAULT_BETA
    rho: int = DEFAULT_RHO
    workers: int = field(default_factory=_default_workers)
    one_based: bool = True
    symmetric: bool = False
    weighted: bool = False

    def __post_init__(self):
        if self.beta < 1:
            raise ValueError("beta must be >= 1")
        if self.rho < 1:
            raise ValueError("rho must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class EdgeListChunks:
    """Per-worker edge arrays; row t belongs to worker t.

    Arrays are allocated at full declared capacity and only the first
    ``counts[t]`` entries of row t are live. The overallocation is
    virtual: untouched pages are never committed.
    """

    sources: np.ndarray  # (workers, capacity) int64
    targets: np.ndarray  # (workers, capacity) int64
    weights: np.ndarray | None  # (workers, capacity) float32, weighted only
    counts: np.ndarray  # (workers,) int64

    @property
    def num_workers(self) -> int:
        return self.counts.shape[0]

    def total_edges(self) -> int:
        return int(self.counts.sum())

    def worker_edges(self, t: int):
        """Live (sources, targets, weights-or-None) views for worker t."""
        c = self.counts[t]
        w = None if self.weights is None else self.weights[t, :c]
        return self.sources[t, :c], self.targets[t, :c], w

    def to_arrays(self):
        """All live edges concatenated in worker order."""
        src = np.concatenate([self.sources[t, : self.counts[t]] for t in range(self.num_workers)])
        dst = np.concatenate([self.targets[t, : self.counts[t]] for t in range(self.num_workers)])
        if self.weights is None:
            return src, dst, None
        w = np.concatenate([self.weights[t, : self.counts[t]] for t in range(self.num_workers)])
        return src, dst, w


@dataclass
class PartitionedDegrees:
    """rho independent degree arrays of length |V|+1 (keyed worker mod rho)."""

    degrees: np.ndarray  # (rho, |V|+1) int64

    @property
    def rho(self) -> int:
        return self.degrees.shape[0]

    @property
    def num_vertices(self) -> int:
        return self.degrees.shape[1] - 1

    def combined(self) -> np.ndarray:
        """Global degrees as a fresh array (does not mutate the partitions)."""
        return self.degrees.sum(axis=0)


_ERR_MESSAGES = {
    1: "vertex id out of range",
    2: "unsigned integer overflows 64 bits",
    3: "more edges in body than declared entries",
    4: "truncated edge line",
    5: "malformed edge weight",
    6: "signed vertex id",
}

_READ_KERNELS = {}


def _make_read_kernel(weighted: bool, symmetric: bool):
    # The digit scans and whole-number parses are fused into the loop body
    # rather than calling the scanner helpers: per-edge call overhead costs
    # ~3x on 100 MB inputs. Digit runs of <= 19 chars cannot overflow, so
    # the overflow test only guards the rare longer runs.
    @njit(nogil=True, cache=True)
    def read_blocks(data, origin, length, beta, one_based, nv, counter,
                    sources, targets, weights, counts, pdeg, errs, t, rho, capacity):
        deg = pdeg[t % rho]
        nv_u = np.uint64(nv)
        one = np.uint64(1)
        j = counts[t]
        while True:
            k = atomic_fetch_add(counter, 0, 1)
            b = origin + k * beta
            if b >= length:
                break
            end = min(b + beta, length)
            if b != origin and data[b - 1] != 10:
                while b < length and data[b] != 10:
                    b += 1
                if b < length:
                    b += 1
            if end != origin and data[end - 1] != 10:
                while end < length and data[end] != 10:
                    end += 1
                if end < length:
                    end += 1
            while True:
                while b < end:
                    c = data[b]
                    if 48 <= c <= 57:
                        break
                    if (c == 45 or c == 43) and b + 1 < end and 48 <= data[b + 1] <= 57:
                        errs[t, 0] = 6
                        errs[t, 1] = b
                        counts[t] = j
                        return
                    b += 1
                if b == end:
                    break
                tok = b
                u = np.uint64(0)
                lim = min(end, b + 19)
                while b < lim and 48 <= data[b] <= 57:
                    u = u * _U64_TEN + np.uint64(data[b] - 48)
                    b += 1
                while b < end and 48 <= data[b] <= 57:
                    d = np.uint64(data[b] - 48)
                    if u > _U64_DIV10 or (u == _U64_DIV10 and d > _U64_MOD10):
                        errs[t, 0] = 2
                        errs[t, 1] = tok
                        counts[t] = j
                        return
                    u = u * _U64_TEN + d
                    b += 1
                while b < end:
                    c = data[b]
                    if 48 <= c <= 57:
                        break
                    if (c == 45 or c == 43) and b + 1 < end and 48 <= data[b + 1] <= 57:
                        errs[t, 0] = 6
                        errs[t, 1] = b
                        counts[t] = j
                        return
                    b += 1
                if b == end:
                    errs[t, 0] = 4
                    errs[t, 1] = tok
                    counts[t] = j
                    return
                tok2 = b
                v = np.uint64(0)
                lim = min(end, b + 19)
                while b < lim and 48 <= data[b] <= 57:
                    v = v * _U64_TEN + np.uint64(data[b] - 48)
                    b += 1
                while b < end and 48 <= data[b] <= 57:
                    d = np.uint64(data[b] - 48)
                    if v > _U64_DIV10 or (v == _U64_DIV10 and d > _U64_MOD10):
                        errs[t, 0] = 2
                        errs[t, 1] = tok2
                        counts[t] = j
                        return
                    v = v * _U64_TEN + d
                    b += 1
                w = 1.0
                if weighted:
                    while b < end:
                        c = data[b]
                        if 48 <= c <= 57:
                            break
                        if (c == 45 or c == 43) and b + 1 < end and 48 <= data[b + 1] <= 57:
                            break
                        b += 1
                    if b == end:
                        errs[t, 0] = 4
                        errs[t, 1] = tok
                        counts[t] = j
                        return
                    tok3 = b
                    w, b, err = _parse_f64(data, b, end)
                    if err != 0:
                        errs[t, 0] = 5
                        errs[t, 1] = tok3
                        counts[t] = j
                        return
                if one_based:
                    u -= one  # 0 wraps to 2^64-1 and fails the range check
                    v -= one
                if u >= nv_u:
                    errs[t, 0] = 1
                    errs[t, 1] = tok
                    counts[t] = j
                    return
                if v >= nv_u:
                    errs[t, 0] = 1
                    errs[t, 1] = tok2
                    counts[t] = j
                    return
                if j >= capacity:
                    errs[t, 0] = 3
                    errs[t, 1] = tok
                    counts[t] = j
                    return
                ui = np.int64(u)
                vi = np.int64(v)
                sources[t, j] = ui
                targets[t, j] = vi
                if weighted:
                    weights[t, j] = w
                atomic_fetch_add(deg, ui, 1)
                j += 1
                if symmetric:
                    if j >= capacity:
                        errs[t, 0] = 3
                        errs[t, 1] = tok
                        counts[t] = j
                        return
                    sources[t, j] = vi
                    targets[t, j] = ui
                    if weighted:
                        weights[t, j] = w
                    atomic_fetch_add(deg, vi, 1)
                    j += 1
            counts[t] = j

    return read_blocks


def _read_kernel(weighted: bool, symmetric: bool):
    key = (bool(weighted), bool(symmetric))
    fn = _READ_KERNELS.get(key)
    if fn is None:
        fn = _make_read_kernel(*key)
        _READ_KERNELS[key] = fn
    return fn


def read_edgelist(data, body_start: int, header: MtxHeader,
                  cfg: LoadConfig) -> tuple[EdgeListChunks, PartitionedDegrees]:
    """Parse every body line exactly once across ``cfg.workers`` workers.

    Vertex ids are decremented when ``cfg.one_based``; symmetric graphs
    store the reverse of every edge as well (self-loops deliberately
    appear twice). Blocks of ``cfg.beta`` bytes are claimed dynamically:
    an idle worker always takes the next unclaimed block.
    """
    if cfg.symmetric != header.symmetric or cfg.weighted != header.weighted:
        raise ValueError("config symmetric/weighted flags disagree with the header")
    view = _byte_view(data)
    length = view.shape[0]
    if not 0 <= body_start <= length:
        raise ValueError(f"body_start {body_start} outside [0, {length}]")

    nv = header.rows
    mult = 2 if cfg.symmetric else 1
    capacity = header.entries * mult
    workers = cfg.workers

    sources = np.empty((workers, capacity), dtype=np.int64)
    targets = np.empty((workers, capacity), dtype=np.int64)
    if cfg.weighted:
        weights = np.empty((workers, capacity), dtype=np.float32)
    else:
        weights = np.empty((1, 1), dtype=np.float32)  # untouched placeholder
    counts = np.zeros(workers, dtype=np.int64)
    pdeg = np.zeros((cfg.rho, nv + 1), dtype=np.int64)
    errs = np.zeros((workers, 2), dtype=np.int64)
    counter = np.zeros(1, dtype=np.int64)

    if body_start < length:
        kernel = _read_kernel(cfg.weighted, cfg.symmetric)
        run_on_workers(
            workers,
            lambda t: kernel(view, body_start, length, cfg.beta, cfg.one_based, nv,
                             counter, sources, targets, weights, counts, pdeg, errs,
                             t, cfg.rho, capacity),
        )

    bad = np.nonzero(errs[:, 0])[0]
    if bad.size:
        worst = bad[np.argmin(errs[bad, 1])]
        code = int(errs[worst, 0])
        raise FormatError(_ERR_MESSAGES[code], offset=int(errs[worst, 1]))
    total = int(counts.sum())
    if total != capacity:
        raise FormatError(
            f"header declares {header.entries} entries ({capacity} stored edges) "
            f"but the body produced {total}"
        )

    chunks = EdgeListChunks(sources, targets, weights if cfg.weighted else None, counts)
    return chunks, PartitionedDegrees(pdeg)


def combine_degrees(pdeg: PartitionedDegrees) -> None:
    """Accumulate every partition into partition 0 (in place).

    Callers that still need the individual partitions (the per-partition
    offset scans) must finish with them before combining.
    """
    d = pdeg.degrees
    if d.shape[0] > 1:
        d[0] += d[1:].sum(axis=0)
