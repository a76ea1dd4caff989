"""Shared test utilities: fixtures builders and block-coverage checks."""

import numpy as np

import gvel


def as_mapped(body: bytes) -> gvel.MappedBytes:
    return gvel.MappedBytes(np.frombuffer(body, dtype=np.uint8))


def write_mtx(path, body: str, rows=3, entries=None, field="pattern", symmetry="general"):
    """Write a small MTX file; entries defaults to the number of body lines."""
    if entries is None:
        entries = len([ln for ln in body.splitlines() if ln.strip()])
    text = f"%%MatrixMarket matrix coordinate {field} {symmetry}\n{rows} {rows} {entries}\n{body}"
    path.write_text(text)
    return path


def block_cover(body: bytes, beta: int):
    data = as_mapped(body)
    return [gvel.block_range(data, i, beta) for i in range(0, len(body), beta)]


def assert_block_partition(body: bytes, beta: int):
    """Blocks tile [0, len) contiguously and start only on line boundaries."""
    if not body:
        return
    pos = 0
    for r in block_cover(body, beta):
        if r.end > r.begin:
            assert r.begin == pos, f"gap/overlap at {pos} (beta={beta}, got {r})"
            if r.begin != 0:
                assert body[r.begin - 1] == 0x0A, f"unaligned begin {r.begin}"
            pos = r.end
    assert pos == len(body), f"coverage stops at {pos}/{len(body)} (beta={beta})"


def random_body(rng, max_lines=40, max_len=14) -> bytes:
    """Random text body with jagged lines, blanks, maybe no trailing newline."""
    lines = []
    for _ in range(int(rng.integers(0, max_lines))):
        n = int(rng.integers(0, max_len))
        lines.append(bytes(rng.integers(97, 123, size=n, dtype=np.uint8)) + b"\n")
    body = b"".join(lines)
    if body and rng.random() < 0.3:
        body = body[:-1]
    return body


def edge_triples(chunks: gvel.EdgeListChunks):
    """Sorted (source, target, weight) triples across all workers."""
    src, dst, w = chunks.to_arrays()
    if w is None:
        w = np.ones(src.shape[0], dtype=np.float32)
    order = np.lexsort((w, dst, src))
    return list(zip(src[order].tolist(), dst[order].tolist(), w[order].tolist()))
