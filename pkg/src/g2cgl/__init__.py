"""Genus-2 CGL-style hash from Richelot isogenies over F_{p^2}, plus a
superspecial (2,2)-isogeny graph explorer for small primes."""

__version__ = "0.1.0"

from .baseline import (
    BenchReport,
    bench,
    cgl_3_elliptic_hash,
    cgl_elliptic_hash,
    elliptic_prime,
    format_table,
    reports_json,
)
from .errors import (
    DegenerateSplittingError,
    G2Error,
    InternalInvariantError,
    SetupError,
)
from .field import FieldContext, Fp2
from .graph import (
    CheckResult,
    GraphSnapshot,
    build_graph,
    export_dot,
    export_json,
    find_path,
    format_check,
    replay_path,
    verify_conjectures,
    verify_counts,
    verify_theorems,
    vertex_ids,
)
from .hashing import (
    HashContext,
    context_line,
    hash_bytes,
    hash_digits,
    message_digits,
    setup,
)
from .invariants import (
    EllipticRootsForm,
    InvariantTriple,
    cq_from_roots,
    j_invariant,
)
from .poly import Poly, disc2, disc3, factor_deg_le2
from .richelot import (
    BASE_PAIRING,
    PAIRINGS15,
    SPLIT_TABLE,
    FactorList,
    SplitDetected,
    quintic_seed,
    richelot_step,
    sextic_seed,
    superspecial_seeds,
)

__all__ = [
    "FieldContext",
    "Fp2",
    "Poly",
    "disc2",
    "disc3",
    "factor_deg_le2",
    "G2Error",
    "DegenerateSplittingError",
    "InternalInvariantError",
    "SetupError",
    "EllipticRootsForm",
    "InvariantTriple",
    "cq_from_roots",
    "j_invariant",
    "BASE_PAIRING",
    "PAIRINGS15",
    "SPLIT_TABLE",
    "FactorList",
    "SplitDetected",
    "quintic_seed",
    "richelot_step",
    "sextic_seed",
    "superspecial_seeds",
    "HashContext",
    "setup",
    "message_digits",
    "hash_digits",
    "hash_bytes",
    "context_line",
    "GraphSnapshot",
    "CheckResult",
    "build_graph",
    "verify_counts",
    "verify_theorems",
    "verify_conjectures",
    "format_check",
    "find_path",
    "replay_path",
    "vertex_ids",
    "export_dot",
    "export_json",
    "BenchReport",
    "bench",
    "cgl_elliptic_hash",
    "cgl_3_elliptic_hash",
    "elliptic_prime",
    "format_table",
    "reports_json",
    "__version__",
]
