"""Trevisan's extractor and its building blocks."""

from .design import WeakDesign, basic_weak_design, block_sizes, block_weak_design
from .extractor import TrevisanParams, compute_params, rsh_onebit, trevisan_extract
from .field import GF2Field, find_irreducible, is_irreducible

__all__ = [
    "GF2Field",
    "TrevisanParams",
    "WeakDesign",
    "basic_weak_design",
    "block_sizes",
    "block_weak_design",
    "compute_params",
    "find_irreducible",
    "is_irreducible",
    "rsh_onebit",
    "trevisan_extract",
]
