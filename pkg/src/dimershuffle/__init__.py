"""Pyramid partitions, dimer shuffling and super-rigid 3D partitions.

Brute-force enumerations are checked against product formulas by truncated
power-series arithmetic.
"""
from .pyramid import DimerConfig, empty_room, enumerate_partitions, partition_series
from .series import Monomial, TruncatedSeries, formula_Z
from .shuffle import DeficientConfig, delete_blocks, fillings, shuffle_formal_sum, slide

__version__ = "0.1.0"

__all__ = [
    "DeficientConfig", "DimerConfig", "Monomial", "TruncatedSeries", "delete_blocks", "empty_room",
    "enumerate_partitions", "fillings", "formula_Z", "partition_series", "shuffle_formal_sum", "slide",
]
