"""Zigzag persistence via conversion to a single non-zigzag filtration."""
from .barcode import convert_barcode, map_pair
from .intervals import ZigzagInterval
from .conversion import BoundaryMatrix, CellRegistry, convert_filt
from .filtration import (
    DELETE,
    INSERT,
    FiltrationOp,
    ZigzagFiltration,
    close_filtration,
    parse_ops,
    validate,
)
from .pipeline import fast_zigzag
from .reduction import reduce

__all__ = [
    "BoundaryMatrix",
    "CellRegistry",
    "DELETE",
    "FiltrationOp",
    "INSERT",
    "ZigzagFiltration",
    "ZigzagInterval",
    "close_filtration",
    "convert_barcode",
    "convert_filt",
    "fast_zigzag",
    "map_pair",
    "parse_ops",
    "reduce",
    "validate",
]
