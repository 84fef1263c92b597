"""Graph complexes on both sides of the comparison and the map between them."""

from .canon import DecGraph, canonical_key, canonicalize
from .complexes import (
    AFEYN,
    FEYN,
    build_afeyn_qbv,
    build_feyn_bv,
    top_weight,
)
from .graphs import cached_graphs, enumerate_graphs, graphs_from_text, graphs_to_text
from .phi import (
    compare_cohomology,
    phi_matrix,
    verify_phi,
    verify_phiE_truncated,
)

__all__ = [
    "DecGraph",
    "canonical_key",
    "canonicalize",
    "AFEYN",
    "FEYN",
    "build_afeyn_qbv",
    "build_feyn_bv",
    "top_weight",
    "cached_graphs",
    "enumerate_graphs",
    "graphs_from_text",
    "graphs_to_text",
    "compare_cohomology",
    "phi_matrix",
    "verify_phi",
    "verify_phiE_truncated",
]
