"""gvel: parallel loading of text graphs into edgelists and CSR.

Memory-maps the input, parses it in newline-aligned blocks claimed
dynamically by worker threads, accumulates per-worker edgelists with
partitioned degree counts, and assembles the global CSR through
per-partition CSRs to keep cursor contention low. A sequential reference
loader defines correct output and serves as the baseline.
"""

from .binfmt import FLAG_SYMMETRIC, FLAG_WEIGHTED, MAGIC, csr_to_bytes, read_csr, write_csr
from .csr import (
    Csr,
    PartitionedCsr,
    canonicalize,
    convert_to_csr,
    csr_equal,
    exclusive_scan,
)
from .edgelist import (
    DEFAULT_RHO,
    EdgeListChunks,
    LoadConfig,
    PartitionedDegrees,
    combine_degrees,
    read_edgelist,
)
from .errors import FormatError, GraphInputError, MappingError
from .mapping import DEFAULT_BETA, BlockRange, MappedBytes, block_range, map_file
from .parsing import (
    MtxHeader,
    find_next_digit,
    find_next_line,
    parse_float,
    parse_mtx_header,
    parse_whole_number,
)
from .pipeline import LoadResult, load_csr, load_edgelist, prepare
from .reference import FlatEdgelist, oracle_load, prescan_el
from .synth import generate_mtx

__version__ = "0.1.0"

__all__ = [
    "BlockRange",
    "Csr",
    "DEFAULT_BETA",
    "DEFAULT_RHO",
    "EdgeListChunks",
    "FLAG_SYMMETRIC",
    "FLAG_WEIGHTED",
    "FlatEdgelist",
    "FormatError",
    "GraphInputError",
    "LoadConfig",
    "LoadResult",
    "MAGIC",
    "MappedBytes",
    "MappingError",
    "MtxHeader",
    "PartitionedCsr",
    "PartitionedDegrees",
    "block_range",
    "canonicalize",
    "combine_degrees",
    "convert_to_csr",
    "csr_equal",
    "csr_to_bytes",
    "exclusive_scan",
    "find_next_digit",
    "find_next_line",
    "generate_mtx",
    "load_csr",
    "load_edgelist",
    "map_file",
    "oracle_load",
    "parse_float",
    "parse_mtx_header",
    "parse_whole_number",
    "prepare",
    "prescan_el",
    "read_csr",
    "read_edgelist",
    "write_csr",
]
