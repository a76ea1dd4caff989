"""Deterministic synthetic Matrix Market files for tests and benchmarks."""

import numpy as np
import pandas as pd


def generate_mtx(path, vertices: int, edges: int, *, seed: int = 0,
                 distribution: str = "uniform", skew: float = 1.0,
                 weighted: bool = False, symmetric: bool = False) -> None:
    """Write a coordinate MTX file with ``edges`` entries over ``vertices`` ids.

    Deterministic for a given argument tuple. ``distribution`` picks the
    source-id law: "uniform", or "powerlaw" where vertex v is drawn with
    probability proportional to (v+1)**-skew (targets stay uniform).
    Symmetric files keep entries in the lower triangle, as conventional
    for the symmetry annotation.
    """
    if vertices < 1:
        raise ValueError("vertices must be >= 1")
    if edges < 0:
        raise ValueError("edges must be >= 0")
    rng = np.random.default_rng(seed)
    if distribution == "uniform":
        src = rng.integers(0, vertices, size=edges, dtype=np.int64)
    elif distribution == "powerlaw":
        weights_ = np.arange(1, vertices + 1, dtype=np.float64) ** -skew
        weights_ /= weights_.sum()
        src = rng.choice(vertices, size=edges, p=weights_).astype(np.int64)
    else:
        raise ValueError(f"unknown distribution '{distribution}'")
    dst = rng.integers(0, vertices, size=edges, dtype=np.int64)

    if symmetric:
        # store each entry in the lower triangle (row >= col)
        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        src, dst = hi, lo

    field = "real" if weighted else "pattern"
    symmetry = "symmetric" if symmetric else "general"
    with open(path, "wb") as f:
        f.write(f"%%MatrixMarket matrix coordinate {field} {symmetry}\n".encode())
        f.write(b"% synthetic graph\n")
        f.write(f"{vertices} {vertices} {edges}\n".encode())
        if edges:
            cols = {"u": src + 1, "v": dst + 1}
            if weighted:
                cols["w"] = rng.random(edges, dtype=np.float64).round(6)
            frame = pd.DataFrame(cols)
            frame.to_csv(f, sep=" ", header=False, index=False,
                         lineterminator="\n", float_format="%.6f")
