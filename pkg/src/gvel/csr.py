"""Multi-stage conversion of per-worker edgelists into a global CSR.

Five phases, with a barrier between each:

1. exclusive-scan each degree partition into per-partition offsets
2. populate per-partition CSRs in parallel, consuming the offsets as
   atomic write cursors
3. repair the consumed offsets (shift right one slot, zero in front)
4. combine the degree partitions and scan them into global offsets
5. merge the partition CSRs per vertex into the global arrays, partitions
   in ascending order, vertices claimed dynamically in ranges

Building rho independent partition CSRs first keeps the hot fetch-add
cursors split rho ways, which is what tames contention on high-degree
vertices; adjacency order within a vertex is schedule-dependent, so
comparisons go through :func:`canonicalize`.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from ._atomics import atomic_fetch_add
from ._threads import run_on_workers
from .edgelist import EdgeListChunks, LoadConfig, PartitionedDegrees, combine_degrees
from .parsing import MtxHeader


@dataclass
class Csr:
    """Global CSR: offsets (|V|+1), edge targets (|E|), optional weights."""

    offsets: np.ndarray  # (|V|+1,) int64
    edge_keys: np.ndarray  # (|E|,) int64
    edge_values: np.ndarray | None = None  # (|E|,) float32, weighted only

    @property
    def num_vertices(self) -> int:
        return self.offsets.shape[0] - 1

    @property
    def num_edges(self) -> int:
        return self.edge_keys.shape[0]

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighbors(self, u: int) -> np.ndarray:
        return self.edge_keys[self.offsets[u] : self.offsets[u + 1]]

    def validate(self) -> None:
        """Raise ValueError if the offset/key invariants do not hold."""
        offs = self.offsets
        if offs.shape[0] < 1 or offs[0] != 0:
            raise ValueError("offsets must start at 0")
        if np.any(np.diff(offs) < 0):
            raise ValueError("offsets must be non-decreasing")
        if offs[-1] != self.edge_keys.shape[0]:
            raise ValueError("offsets[-1] must equal the number of edges")
        nv = self.num_vertices
        if self.edge_keys.shape[0] and (
            self.edge_keys.min() < 0 or self.edge_keys.max() >= nv
        ):
            raise ValueError("edge target out of range")
        if self.edge_values is not None and self.edge_values.shape != self.edge_keys.shape:
            raise ValueError("edge_values length must match edge_keys")


@dataclass
class PartitionedCsr:
    """rho partition-local CSRs packed into flat arrays.

    Partition p's edges live in ``edge_keys[base[p]:base[p+1]]`` and are
    indexed by the partition-local ``offsets[p]`` row.
    """

    offsets: np.ndarray  # (rho, |V|+1) int64, partition-local
    base: np.ndarray  # (rho+1,) int64, partition start in the flat arrays
    edge_keys: np.ndarray  # (total,) int64
    edge_values: np.ndarray | None

    @property
    def rho(self) -> int:
        return self.offsets.shape[0]

    def partition(self, p: int):
        """(offsets, edge_keys, edge_values-or-None) views for partition p."""
        lo, hi = self.base[p], self.base[p + 1]
        vals = None if self.edge_values is None else self.edge_values[lo:hi]
        return self.offsets[p], self.edge_keys[lo:hi], vals


def exclusive_scan(values) -> np.ndarray:
    """out[0] = 0, out[k] = sum(values[:k]); same length as the input."""
    vals = np.asarray(values, dtype=np.int64)
    if vals.shape[0] < 1:
        raise ValueError("exclusive_scan needs at least one element")
    out = np.empty(vals.shape[0], dtype=np.int64)
    out[0] = 0
    np.cumsum(vals[:-1], out=out[1:])
    return out


_POPULATE_KERNELS = {}
_MERGE_KERNELS = {}


def _make_populate_kernel(weighted: bool):
    @njit(nogil=True, cache=True)
    def populate(sources, targets, weights, counts, poffsets, base, pkeys, pvals, t, rho):
        cur = poffsets[t % rho]
        b0 = base[t % rho]
        for i in range(counts[t]):
            u = sources[t, i]
            j = atomic_fetch_add(cur, u, 1)
            pkeys[b0 + j] = targets[t, i]
            if weighted:
                pvals[b0 + j] = weights[t, i]

    return populate


def _make_merge_kernel(weighted: bool):
    @njit(nogil=True, cache=True)
    def merge(offsets, poffsets, base, pkeys, pvals, keys, vals, counter, chunk, nv, rho):
        while True:
            c = atomic_fetch_add(counter, 0, 1)
            u0 = c * chunk
            if u0 >= nv:
                break
            u1 = min(u0 + chunk, nv)
            for u in range(u0, u1):
                j = offsets[u]
                for p in range(rho):
                    i0 = base[p] + poffsets[p, u]
                    i1 = base[p] + poffsets[p, u + 1]
                    for i in range(i0, i1):
                        keys[j] = pkeys[i]
                        if weighted:
                            vals[j] = pvals[i]
                        j += 1

    return merge


def _kernel(cache: dict, factory, weighted: bool):
    fn = cache.get(weighted)
    if fn is None:
        fn = factory(weighted)
        cache[weighted] = fn
    return fn


def _populate_partitions(chunks: EdgeListChunks, pdeg: PartitionedDegrees) -> PartitionedCsr:
    """Phases 1-3: scan partition offsets, populate, repair the cursors."""
    rho = pdeg.rho
    nv = pdeg.num_vertices
    poffsets = np.empty((rho, nv + 1), dtype=np.int64)
    for p in range(rho):
        poffsets[p] = exclusive_scan(pdeg.degrees[p])
    # degrees[p][|V|] is the 0 sentinel, so the scan ends at the partition total
    base = np.zeros(rho + 1, dtype=np.int64)
    np.cumsum(poffsets[:, nv], out=base[1:])
    total = int(base[rho])

    weighted = chunks.weights is not None
    pkeys = np.empty(total, dtype=np.int64)
    pvals = np.empty(total if weighted else 1, dtype=np.float32)
    weights = chunks.weights if weighted else np.empty((1, 1), dtype=np.float32)

    kernel = _kernel(_POPULATE_KERNELS, _make_populate_kernel, weighted)
    run_on_workers(
        chunks.num_workers,
        lambda t: kernel(chunks.sources, chunks.targets, weights, chunks.counts,
                         poffsets, base, pkeys, pvals, t, rho),
    )

    # Repair the cursor-consumed offsets: shift right one slot, zero in front.
    poffsets[:, 1:] = poffsets[:, :-1]
    poffsets[:, 0] = 0
    return PartitionedCsr(poffsets, base, pkeys, pvals if weighted else None)


def _merge_partitions(pcsr: PartitionedCsr, offsets: np.ndarray, workers: int) -> Csr:
    """Phase 5: concatenate each vertex's partition runs, p ascending."""
    nv = offsets.shape[0] - 1
    total = int(offsets[nv])
    weighted = pcsr.edge_values is not None
    keys = np.empty(total, dtype=np.int64)
    vals = np.empty(total if weighted else 1, dtype=np.float32)
    pvals = pcsr.edge_values if weighted else np.empty(1, dtype=np.float32)

    # Dynamic ranges keep workers busy under power-law degree skew.
    chunk = max(64, -(-nv // (workers * 16)) if nv else 64)
    counter = np.zeros(1, dtype=np.int64)
    kernel = _kernel(_MERGE_KERNELS, _make_merge_kernel, weighted)
    run_on_workers(
        workers,
        lambda t: kernel(offsets, pcsr.offsets, pcsr.base, pcsr.edge_keys, pvals,
                         keys, vals, counter, chunk, nv, pcsr.rho),
    )
    return Csr(offsets, keys, vals if weighted else None)


def convert_to_csr(chunks: EdgeListChunks, pdeg: PartitionedDegrees,
                   header: MtxHeader, cfg: LoadConfig) -> Csr:
    """Convert the reader outputs into one global CSR (all five phases).

    Consumes ``pdeg`` (partition 0 ends up holding the combined degrees)
    and releases the partition scratch before returning. Peak memory holds
    |E| edges in the chunks, |E| in the partition CSRs, and |E| in the
    global CSR simultaneously.
    """
    if pdeg.num_vertices != header.rows:
        raise ValueError("degree arrays disagree with the header vertex count")
    pcsr = _populate_partitions(chunks, pdeg)
    combine_degrees(pdeg)  # partitions were already scanned in phase 1
    offsets = exclusive_scan(pdeg.degrees[0])
    return _merge_partitions(pcsr, offsets, cfg.workers)


def canonicalize(csr: Csr) -> Csr:
    """Sort each vertex's adjacency by (target, weight); offsets unchanged.

    The parallel pipeline's adjacency order depends on scheduling, so
    equality checks compare canonicalized copies. Idempotent.
    """
    deg = np.diff(csr.offsets)
    owners = np.repeat(np.arange(deg.shape[0], dtype=np.int64), deg)
    if csr.edge_values is not None:
        order = np.lexsort((csr.edge_values, csr.edge_keys, owners))
        return Csr(csr.offsets.copy(), csr.edge_keys[order], csr.edge_values[order])
    order = np.lexsort((csr.edge_keys, owners))
    return Csr(csr.offsets.copy(), csr.edge_keys[order], None)


def csr_equal(a: Csr, b: Csr) -> bool:
    """Exact equality of offsets, targets, and (when present) weights."""
    if (a.edge_values is None) != (b.edge_values is None):
        return False
    if not np.array_equal(a.offsets, b.offsets):
        return False
    if not np.array_equal(a.edge_keys, b.edge_keys):
        return False
    if a.edge_values is not None and not np.array_equal(a.edge_values, b.edge_values):
        return False
    return True
