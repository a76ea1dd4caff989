import numpy as np

import gvel


def test_same_seed_same_bytes(tmp_path):
    a = tmp_path / "a.mtx"
    b = tmp_path / "b.mtx"
    gvel.generate_mtx(a, 10, 20, seed=1)
    gvel.generate_mtx(b, 10, 20, seed=1)
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.mtx"
    gvel.generate_mtx(c, 10, 20, seed=2)
    assert a.read_bytes() != c.read_bytes()


def test_declared_entries_match_body(tmp_path):
    path = tmp_path / "g.mtx"
    gvel.generate_mtx(path, 50, 123, seed=3, weighted=True)
    header, body = gvel.parse_mtx_header(path.read_bytes())
    assert header.entries == 123
    lines = [ln for ln in path.read_bytes()[body:].split(b"\n") if ln.strip()]
    assert len(lines) == 123


def test_powerlaw_skews_degrees(tmp_path):
    path = tmp_path / "p.mtx"
    gvel.generate_mtx(path, 500, 5000, seed=4, distribution="powerlaw", skew=1.2)
    res = gvel.load_csr(path, cfg=gvel.LoadConfig(workers=2))
    deg = res.csr.degrees()
    assert deg.max() >= deg.mean()


def test_degenerate_single_vertex(tmp_path):
    path = tmp_path / "one.mtx"
    gvel.generate_mtx(path, 1, 0)
    text = path.read_text()
    assert "1 1 0\n" in text
    header, body = gvel.parse_mtx_header(path.read_bytes())
    assert (header.rows, header.entries) == (1, 0)
    assert body == len(path.read_bytes())


def test_generated_files_load_and_verify(tmp_path):
    for k, (symmetric, weighted) in enumerate(
        [(False, False), (False, True), (True, False), (True, True)]
    ):
        path = tmp_path / f"g{k}.mtx"
        gvel.generate_mtx(path, 60, 200, seed=k, weighted=weighted, symmetric=symmetric)
        res = gvel.load_csr(path, cfg=gvel.LoadConfig(workers=2))
        _, oracle_csr = gvel.oracle_load(path, res.cfg)
        assert gvel.csr_equal(gvel.canonicalize(res.csr), gvel.canonicalize(oracle_csr))
        assert res.csr.num_edges == (400 if symmetric else 200)


def test_symmetric_entries_stay_lower_triangle(tmp_path):
    path = tmp_path / "s.mtx"
    gvel.generate_mtx(path, 30, 100, seed=5, symmetric=True)
    body = path.read_bytes().split(b"\n", 3)[3]
    for line in body.split(b"\n"):
        if line.strip():
            u, v = (int(t) for t in line.split())
            assert u >= v
