"""Benchmark harness: sweeps over threads / block size / partitions.

Each sweep point runs the requested phase a fixed number of times and
reports the mean wall time and throughput as one line of structured text
per point (JSON objects with a fixed field order). Timings cover map +
parse for the "edgelist" phase and additionally the CSR conversion for
"csr-total"; file writes are never timed.
"""

import json
import time
from dataclasses import dataclass, replace

from .csr import convert_to_csr
from .edgelist import LoadConfig, read_edgelist
from .pipeline import prepare

SWEEP_DEFAULTS = {
    "threads": [1, 2, 4, 8],
    "beta": [256, 4096, 262144],
    "rho": [1, 2, 4, 8],
}

PHASES = ("edgelist", "csr-total")


@dataclass
class BenchRecord:
    graph: str
    phase: str
    workers: int
    beta: int
    rho: int
    mean_seconds: float
    edges_per_second: float

    def to_json(self) -> str:
        return json.dumps({
            "graph": self.graph,
            "phase": self.phase,
            "workers": self.workers,
            "beta": self.beta,
            "rho": self.rho,
            "mean_seconds": self.mean_seconds,
            "edges_per_second": self.edges_per_second,
        })


def _time_point(path, fmt, cfg, repeats, want_total, prep_kw):
    """Mean seconds for (edgelist, csr-total) plus the stored edge count."""
    el_times = []
    total_times = []
    stored = 0
    for _ in range(repeats):
        t0 = time.perf_counter()
        prep = prepare(path, fmt, cfg, **prep_kw)
        chunks, pdeg = read_edgelist(prep.data, prep.body_start, prep.header, prep.cfg)
        t1 = time.perf_counter()
        stored = chunks.total_edges()
        if want_total:
            convert_to_csr(chunks, pdeg, prep.header, prep.cfg)
            total_times.append(time.perf_counter() - t0)
        el_times.append(t1 - t0)
        prep.data.close()
    mean_el = sum(el_times) / len(el_times)
    mean_total = sum(total_times) / len(total_times) if total_times else None
    return mean_el, mean_total, stored


def run_sweep(path, fmt: str = "mtx", sweep: str | None = None,
              values=None, repeats: int = 5, cfg: LoadConfig | None = None,
              phase: str = "edgelist", graph_name: str | None = None,
              **prep_kw) -> list[BenchRecord]:
    """Run the sweep and return one record per (sweep point, phase).

    ``sweep`` is "threads", "beta", "rho", or None for a single point at
    the base config. An untimed warm-up load precedes the measurements so
    kernel compilation and page-cache population stay out of the numbers.
    """
    if cfg is None:
        cfg = LoadConfig()
    if phase not in PHASES and phase != "both":
        raise ValueError(f"unknown phase '{phase}'")
    phases = list(PHASES) if phase == "both" else [phase]
    want_total = "csr-total" in phases
    if sweep is None:
        points = [None]
    else:
        if sweep not in SWEEP_DEFAULTS:
            raise ValueError(f"unknown sweep '{sweep}'")
        points = list(values) if values else SWEEP_DEFAULTS[sweep]
    name = graph_name if graph_name is not None else str(path)

    if fmt == "el" and (prep_kw.get("vertices") is None or prep_kw.get("edges") is None):
        # discover counts once so the sweep times map + parse, not the pre-scan
        probe = prepare(path, fmt, cfg, **prep_kw)
        probe.data.close()
        prep_kw = dict(prep_kw, vertices=probe.header.rows, edges=probe.header.entries)

    _time_point(path, fmt, _apply(cfg, sweep, points[0]), 1, want_total, prep_kw)  # warm-up

    records = []
    for v in points:
        cfg_v = _apply(cfg, sweep, v)
        mean_el, mean_total, stored = _time_point(path, fmt, cfg_v, repeats, want_total, prep_kw)
        for ph in phases:
            secs = mean_el if ph == "edgelist" else mean_total
            records.append(BenchRecord(
                graph=name, phase=ph, workers=cfg_v.workers, beta=cfg_v.beta,
                rho=cfg_v.rho, mean_seconds=secs,
                edges_per_second=stored / secs if secs > 0 else float("inf"),
            ))
    return records


def _apply(cfg: LoadConfig, sweep: str | None, value) -> LoadConfig:
    if sweep is None or value is None:
        return cfg
    if sweep == "threads":
        return replace(cfg, workers=int(value))
    if sweep == "beta":
        return replace(cfg, beta=int(value))
    return replace(cfg, rho=int(value))
