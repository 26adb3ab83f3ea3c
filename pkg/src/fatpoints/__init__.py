"""Symbolic powers, containments and resurgence of fat point ideals."""

from .fatpoint import (
    Classification,
    FatPointScheme,
    classify,
    containment_table,
    ideal_of,
    ordinary_power,
    resurgence_report,
    symbolic_power,
)
from .monomial import MonomialIdeal, minimalize

__all__ = [
    "Classification",
    "FatPointScheme",
    "MonomialIdeal",
    "classify",
    "containment_table",
    "ideal_of",
    "minimalize",
    "ordinary_power",
    "resurgence_report",
    "symbolic_power",
]

__version__ = "0.1.0"
