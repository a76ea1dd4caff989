import pytest

TINY_MTX = "%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n2 3\n"


@pytest.fixture
def tiny_mtx(tmp_path):
    """The 2-edge fixture: 3 vertices, edges (1,2) and (2,3), 1-based."""
    path = tmp_path / "tiny.mtx"
    path.write_text(TINY_MTX)
    return path
