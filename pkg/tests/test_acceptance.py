"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines and
timings. The performance checks (criteria 6 and 7) generate a >=100 MB
synthetic file once per session and measure with warm page cache and warm
kernels.
"""

import hashlib
import time

import numpy as np
import pytest

import gvel
from gvel.pipeline import load_edgelist
from helpers import assert_block_partition, random_body

FLAG_COMBOS = [(False, False), (False, True), (True, False), (True, True)]


def _report(num: int, ok: bool, detail: str):
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


# ---------------------------------------------------------------------------
# criteria 1 + 5: randomized oracle equivalence and conservation
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def suite1(tmp_path_factory):
    root = tmp_path_factory.mktemp("suite1")
    rng = np.random.default_rng(12345)
    workers_cycle = [1, 2, 4]
    rho_cycle = [1, 2, 4, 8]
    beta_cycle = [256, 4096, 262144]
    results = []
    t0 = time.perf_counter()
    for k in range(200):
        symmetric, weighted = FLAG_COMBOS[k % 4]
        if k < 4:
            nv, ne = 10_000, 100_000  # the extreme corner, all flag combos
        else:
            nv = int(rng.integers(1, 10_001))
            ne = min(100_000, int(10 ** rng.uniform(0, 5)))
        path = root / f"g{k}.mtx"
        gvel.generate_mtx(path, nv, ne, seed=int(rng.integers(2**31)),
                          distribution="powerlaw" if k % 2 else "uniform",
                          skew=1.1, weighted=weighted, symmetric=symmetric)
        cfg = gvel.LoadConfig(workers=workers_cycle[k % 3], rho=rho_cycle[k % 4],
                              beta=beta_cycle[k % 3])
        res = gvel.load_csr(path, cfg=cfg)
        _, oracle_csr = gvel.oracle_load(path, res.cfg)
        par = gvel.canonicalize(res.csr)
        orc = gvel.canonicalize(oracle_csr)
        results.append({
            "equal": gvel.csr_equal(par, orc),
            "total_ok": int(res.csr.offsets[-1]) == res.csr.num_edges,
            "degrees_ok": np.array_equal(res.csr.degrees(), oracle_csr.degrees()),
            "symmetric": symmetric,
            "stored": res.csr.num_edges,
            "entries": ne,
        })
        path.unlink()
    results.append({"seconds": time.perf_counter() - t0})
    return results


def test_criterion_1_oracle_equivalence(suite1):
    graphs = suite1[:-1]
    bad = [i for i, r in enumerate(graphs) if not r["equal"]]
    _report(1, not bad,
            f"200/200 randomized graphs match the oracle exactly "
            f"({suite1[-1]['seconds']:.1f}s)" if not bad else f"mismatches at {bad[:5]}")


def test_criterion_5_conservation(suite1):
    graphs = suite1[:-1]
    ok = True
    detail = "offsets totals, per-vertex degrees, and symmetric 2x counts all hold"
    for i, r in enumerate(graphs):
        if not (r["total_ok"] and r["degrees_ok"]):
            ok, detail = False, f"graph {i}: offset/degree conservation violated"
            break
        expected = r["entries"] * (2 if r["symmetric"] else 1)
        if r["stored"] != expected:
            ok, detail = False, f"graph {i}: stored {r['stored']} != {expected}"
            break
    _report(5, ok, detail)


# ---------------------------------------------------------------------------
# criterion 2: configuration independence
# ---------------------------------------------------------------------------

def test_criterion_2_configuration_independence(tmp_path):
    path = tmp_path / "fixed.mtx"
    gvel.generate_mtx(path, 10_000, 100_000, seed=42, distribution="powerlaw",
                      skew=1.1, weighted=True)
    t0 = time.perf_counter()
    digests = set()
    runs = 0
    for workers in (1, 2, 4, 8):
        for rho in (1, 2, 4, 8):
            for beta in (256, 4096, 262144):
                cfg = gvel.LoadConfig(workers=workers, rho=rho, beta=beta)
                res = gvel.load_csr(path, cfg=cfg, canonical=True)
                blob = gvel.csr_to_bytes(res.csr, symmetric=res.cfg.symmetric)
                digests.add(hashlib.sha256(blob).hexdigest())
                runs += 1
    _report(2, len(digests) == 1,
            f"{runs} configs (workers x rho x beta) produced byte-identical "
            f"canonical output ({time.perf_counter() - t0:.1f}s)"
            if len(digests) == 1 else f"{len(digests)} distinct outputs")


# ---------------------------------------------------------------------------
# criterion 3: parser round-trips
# ---------------------------------------------------------------------------

def test_criterion_3_parser_roundtrips():
    t0 = time.perf_counter()
    rng = np.random.default_rng(99)

    n_ints = 1_000_000
    values = rng.integers(0, 2**64, size=n_ints, dtype=np.uint64)
    buf = np.frombuffer(" ".join(str(v) for v in values.tolist()).encode(),
                        dtype=np.uint8)
    end = buf.shape[0]
    pos = 0
    int_fail = 0
    for v in values.tolist():
        pos = gvel.find_next_digit(buf, pos, end)
        got, pos = gvel.parse_whole_number(buf, pos, end)
        if got != v:
            int_fail += 1

    n_floats = 1_000_000
    raw = rng.integers(0, 2**64, size=int(n_floats * 1.05), dtype=np.uint64).view(np.float64)
    finite = raw[np.isfinite(raw)]
    extra = rng.uniform(-1e6, 1e6, size=n_floats)
    vals = np.concatenate([finite, extra])[:n_floats]
    parsed = np.empty(n_floats, dtype=np.float64)
    for i, v in enumerate(vals.tolist()):
        s = repr(v).encode()
        parsed[i], _ = gvel.parse_float(s, 0, len(s))
    with np.errstate(invalid="ignore", over="ignore"):
        ref32 = vals.astype(np.float32)
        got32 = parsed.astype(np.float32)
        ok = (got32 == ref32) | (np.abs(got32 - ref32) <= np.spacing(np.abs(ref32)))
    float_fail = int(n_floats - np.count_nonzero(ok))

    _report(3, int_fail == 0 and float_fail == 0,
            f"10^6 uint64 exact, 10^6 floats within 1 ULP at 32-bit "
            f"({time.perf_counter() - t0:.1f}s)"
            if int_fail == 0 and float_fail == 0
            else f"{int_fail} int failures, {float_fail} float failures")


# ---------------------------------------------------------------------------
# criterion 4: block partition property
# ---------------------------------------------------------------------------

def test_criterion_4_block_partition():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    for _ in range(100):
        body = random_body(rng, max_lines=60, max_len=20)
        for beta in (1, 7, 64, 4096):
            assert_block_partition(body, beta)
    _report(4, True,
            f"100 random bodies x beta {{1,7,64,4096}} cover every line exactly once "
            f"({time.perf_counter() - t0:.1f}s)")


# ---------------------------------------------------------------------------
# criteria 6 + 7: desk-scale performance direction checks
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def big_graph(tmp_path_factory):
    root = tmp_path_factory.mktemp("bench")
    path = root / "big.mtx"
    t0 = time.perf_counter()
    # web-graph-like shape: 300k vertices, 8.5M edges (mean degree ~28)
    gvel.generate_mtx(path, 300_000, 8_500_000, seed=7)
    size = path.stat().st_size
    assert size >= 100 * 1024 * 1024, f"fixture too small: {size} bytes"
    # warm page cache and all kernels
    gvel.load_csr(path, cfg=gvel.LoadConfig(workers=4))
    print(f"\n[bench fixture] {size / 1e6:.0f} MB, generated+warmed in "
          f"{time.perf_counter() - t0:.1f}s")
    return path


def _best_edgelist_seconds(path, workers, repeats=5):
    # min over repeats: steadiest estimator of warm-cache time on a shared box
    best = float("inf")
    for _ in range(repeats):
        chunks, pdeg, prep, seconds = load_edgelist(path, cfg=gvel.LoadConfig(workers=workers))
        prep.data.close()
        best = min(best, seconds)
    return best


def test_criterion_6_strong_scaling_smoke(big_graph):
    t1 = _best_edgelist_seconds(big_graph, workers=1)
    t4 = _best_edgelist_seconds(big_graph, workers=4)
    ratio = t4 / t1
    _report(6, ratio <= 0.6,
            f"edgelist read {t1:.3f}s @1 worker vs {t4:.3f}s @4 workers "
            f"(ratio {ratio:.2f} <= 0.6)" if ratio <= 0.6
            else f"ratio {ratio:.2f} > 0.6 ({t1:.3f}s vs {t4:.3f}s; this host "
                 f"exposes 2 cores, so two worker doublings cannot compound)")


def test_criterion_7_beats_sequential_baseline(big_graph):
    t0 = time.perf_counter()
    gvel.oracle_load(big_graph, gvel.LoadConfig())
    t_oracle = time.perf_counter() - t0
    t_par = float("inf")
    for _ in range(3):
        res = gvel.load_csr(big_graph, cfg=gvel.LoadConfig(workers=4))
        t_par = min(t_par, res.total_seconds)
    speedup = t_oracle / t_par
    _report(7, speedup >= 2.0,
            f"parallel CSR load {t_par:.3f}s vs sequential oracle {t_oracle:.1f}s "
            f"({speedup:.0f}x >= 2x)" if speedup >= 2.0
            else f"only {speedup:.2f}x over the oracle")


# ---------------------------------------------------------------------------
# criterion 8: binary format golden file
# ---------------------------------------------------------------------------

def test_criterion_8_binary_golden(tiny_mtx, tmp_path):
    from gvel.cli import main

    out = tmp_path / "tiny.csr"
    rc = main(["convert", str(tiny_mtx), str(out)])
    size = out.stat().st_size
    back, symmetric = gvel.read_csr(out)
    expected = gvel.Csr(np.array([0, 1, 2, 2], dtype=np.int64),
                        np.array([1, 2], dtype=np.int64), None)
    ok = rc == 0 and size == 80 and not symmetric and gvel.csr_equal(back, expected)
    _report(8, ok,
            "converted fixture is exactly 80 bytes and re-reads to the same CSR"
            if ok else f"rc={rc} size={size}")
