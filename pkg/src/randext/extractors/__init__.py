"""Seeded, two-source and deterministic extractors."""

from .circulant import circulant_extract
from .dodis import dodis_extract
from .toeplitz import toeplitz_extract
from .vonneumann import vn_extract

__all__ = ["circulant_extract", "dodis_extract", "toeplitz_extract", "vn_extract"]
