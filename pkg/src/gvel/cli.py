"""Command-line front end: convert, verify, bench, gen."""

import argparse
import os
import sys

from .bench import run_sweep
from .binfmt import write_csr
from .csr import canonicalize, csr_equal
from .edgelist import DEFAULT_RHO, LoadConfig
from .errors import FormatError, GraphInputError
from .mapping import DEFAULT_BETA
from .pipeline import duplicate_edge_count, load_csr, self_loop_count
from .reference import oracle_load
from .synth import generate_mtx

import numpy as np


def _add_reader_args(p):
    p.add_argument("--format", choices=["mtx", "el"], default="mtx",
                   help="input format (default: mtx)")
    p.add_argument("--symmetric", action="store_true",
                   help="el format: store the reverse of every edge")
    p.add_argument("--weighted", action="store_true",
                   help="el format: parse a third weight column")
    basing = p.add_mutually_exclusive_group()
    basing.add_argument("--one-based", dest="one_based", action="store_true", default=None,
                        help="decrement vertex ids while parsing (mtx default)")
    basing.add_argument("--zero-based", dest="one_based", action="store_false",
                        help="keep vertex ids as written (el default)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker count (default: all cores)")
    p.add_argument("--beta", type=int, default=DEFAULT_BETA,
                   help=f"block size in bytes (default: {DEFAULT_BETA})")
    p.add_argument("--rho", type=int, default=DEFAULT_RHO,
                   help=f"degree/CSR partition count (default: {DEFAULT_RHO})")
    p.add_argument("--vertices", type=int, default=None,
                   help="el format: vertex count (skips the pre-scan)")
    p.add_argument("--edges", type=int, default=None,
                   help="el format: edge count (skips the pre-scan)")


def _cfg(args) -> LoadConfig:
    workers = args.threads if args.threads else (os.cpu_count() or 1)
    return LoadConfig(beta=args.beta, rho=args.rho, workers=workers,
                      symmetric=args.symmetric, weighted=args.weighted)


def _prep_kw(args):
    return dict(one_based=args.one_based, vertices=args.vertices, edges=args.edges)


def _line_of(path, offset):
    try:
        with open(path, "rb") as f:
            return f.read(offset).count(b"\n") + 1
    except OSError:
        return None


def cmd_convert(args) -> int:
    res = load_csr(args.input, fmt=args.format, cfg=_cfg(args),
                   canonical=args.canonical, **_prep_kw(args))
    size = write_csr(args.output, res.csr, symmetric=res.cfg.symmetric)
    print(f"vertices={res.csr.num_vertices} edges={res.csr.num_edges}")
    print(f"edgelist_seconds={res.edgelist_seconds:.6f}")
    print(f"csr_total_seconds={res.total_seconds:.6f}")
    print(f"wrote {args.output} ({size} bytes)")
    return 0


def cmd_verify(args) -> int:
    res = load_csr(args.input, fmt=args.format, cfg=_cfg(args), **_prep_kw(args))
    _, oracle_csr = oracle_load(args.input, res.cfg, fmt=args.format,
                                vertices=args.vertices, edges=args.edges)
    a = canonicalize(res.csr)
    b = canonicalize(oracle_csr)
    stored = res.csr.num_edges
    print(f"entries={res.header.entries} stored={stored} "
          f"degree_sum={int(res.csr.degrees().sum())} "
          f"self_loops={self_loop_count(res.csr)} "
          f"duplicate_edges={duplicate_edge_count(a)}")
    if csr_equal(a, b):
        print("PASS")
        return 0
    print(f"FAIL first_mismatch_vertex={_first_mismatch(a, b)}")
    return 1


def _first_mismatch(a, b) -> int:
    if a.num_vertices != b.num_vertices:
        return 0
    dd = np.nonzero(a.degrees() != b.degrees())[0]
    if dd.size:
        return int(dd[0])
    idx = np.nonzero(a.edge_keys != b.edge_keys)[0]
    if not idx.size and a.edge_values is not None and b.edge_values is not None:
        idx = np.nonzero(a.edge_values != b.edge_values)[0]
    if idx.size:
        return int(np.searchsorted(a.offsets, idx[0], side="right") - 1)
    return -1


def cmd_bench(args) -> int:
    values = [int(v) for v in args.values.split(",")] if args.values else None
    records = run_sweep(args.input, fmt=args.format, sweep=args.sweep,
                        values=values, repeats=args.repeats, cfg=_cfg(args),
                        phase=args.phase, graph_name=os.path.basename(args.input),
                        **_prep_kw(args))
    for rec in records:
        print(rec.to_json())
    return 0


def cmd_gen(args) -> int:
    generate_mtx(args.output, args.vertices, args.edges, seed=args.seed,
                 distribution=args.distribution, skew=args.skew,
                 weighted=args.weighted, symmetric=args.symmetric)
    print(f"wrote {args.output} (vertices={args.vertices} entries={args.edges})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gvel",
        description="Load text graphs (Matrix Market / edgelist) into CSR, "
                    "verify against the sequential oracle, and benchmark.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert a text graph to a binary CSR file")
    p.add_argument("input")
    p.add_argument("output")
    _add_reader_args(p)
    p.add_argument("--canonical", action="store_true",
                   help="sort each adjacency before writing (deterministic output)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="compare the parallel pipeline against the oracle")
    p.add_argument("input")
    _add_reader_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the loading phases over a parameter sweep")
    p.add_argument("input")
    _add_reader_args(p)
    p.add_argument("--sweep", choices=["threads", "beta", "rho"], default=None)
    p.add_argument("--values", default=None, help="comma-separated sweep values")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--phase", choices=["edgelist", "csr-total", "both"], default="edgelist")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate a synthetic Matrix Market file")
    p.add_argument("output")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distribution", choices=["uniform", "powerlaw"], default="uniform")
    p.add_argument("--skew", type=float, default=1.0)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--symmetric", action="store_true")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        where = ""
        path = getattr(args, "input", None)
        if exc.offset is not None and path:
            line = _line_of(path, exc.offset)
            if line is not None:
                where = f" (line {line})"
        print(f"error: {exc}{where}", file=sys.stderr)
        return 1
    except (GraphInputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
