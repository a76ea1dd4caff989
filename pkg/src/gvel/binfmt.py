"""Binary on-disk container for a converted CSR.

Layout (all fields little-endian):

    magic        8 bytes  b"GVELCSR1"
    flags        u64      bit 0 = weighted, bit 1 = symmetric source
    numVertices  u64
    numEdges     u64
    offsets      (|V|+1) x u64
    edgeKeys     |E| x u64
    edgeValues   |E| x f32   (present iff the weighted bit is set)

Total size is exactly 32 + 8*(|V|+1) + 8*|E| + (4*|E| if weighted).
"""

import struct

import numpy as np

from .csr import Csr
from .errors import FormatError

MAGIC = b"GVELCSR1"
FLAG_WEIGHTED = 1 << 0
FLAG_SYMMETRIC = 1 << 1

_HEADER = struct.Struct("<8sQQQ")


def file_size(num_vertices: int, num_edges: int, weighted: bool) -> int:
    """Exact byte size of a file holding the given CSR shape."""
    return 32 + 8 * (num_vertices + 1) + 8 * num_edges + (4 * num_edges if weighted else 0)


def csr_to_bytes(csr: Csr, symmetric: bool = False) -> bytes:
    weighted = csr.edge_values is not None
    flags = (FLAG_WEIGHTED if weighted else 0) | (FLAG_SYMMETRIC if symmetric else 0)
    parts = [
        _HEADER.pack(MAGIC, flags, csr.num_vertices, csr.num_edges),
        csr.offsets.astype("<u8").tobytes(),
        csr.edge_keys.astype("<u8").tobytes(),
    ]
    if weighted:
        parts.append(csr.edge_values.astype("<f4").tobytes())
    return b"".join(parts)


def write_csr(path, csr: Csr, symmetric: bool = False) -> int:
    """Serialize ``csr`` to ``path``; returns the number of bytes written."""
    blob = csr_to_bytes(csr, symmetric=symmetric)
    with open(path, "wb") as f:
        f.write(blob)
    return len(blob)


def read_csr(path) -> tuple[Csr, bool]:
    """Read a serialized CSR back; returns (csr, symmetric-source flag)."""
    with open(path, "rb") as f:
        blob = f.read()
    if len(blob) < _HEADER.size:
        raise FormatError(f"{path}: truncated header")
    magic, flags, nv, ne = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    weighted = bool(flags & FLAG_WEIGHTED)
    expect = file_size(nv, ne, weighted)
    if len(blob) != expect:
        raise FormatError(f"{path}: expected {expect} bytes, found {len(blob)}")
    pos = _HEADER.size
    offsets = np.frombuffer(blob, dtype="<u8", count=nv + 1, offset=pos).astype(np.int64)
    pos += 8 * (nv + 1)
    keys = np.frombuffer(blob, dtype="<u8", count=ne, offset=pos).astype(np.int64)
    pos += 8 * ne
    vals = None
    if weighted:
        vals = np.frombuffer(blob, dtype="<f4", count=ne, offset=pos).astype(np.float32)
    csr = Csr(offsets, keys, vals)
    csr.validate()
    return csr, bool(flags & FLAG_SYMMETRIC)
