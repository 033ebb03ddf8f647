"""Locally recoverable classical and quantum codes from BCH-type evaluation codes."""
from __future__ import annotations

from .codes import LinearCode, dual, euclidean_dual, hermitian_dual, min_distance
from .cosets import ExponentSet
from .families import FamilySpec, build_family_instance, cartesian_extend, table_one
from .galois import FieldElement, GaloisTower, build_tower

__all__ = [
    "ExponentSet", "FamilySpec", "FieldElement", "GaloisTower", "LinearCode",
    "build_family_instance", "build_tower", "cartesian_extend", "dual", "euclidean_dual",
    "hermitian_dual", "min_distance", "table_one",
]
__version__ = "0.1.0"
