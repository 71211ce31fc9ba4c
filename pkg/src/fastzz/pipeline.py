"""End-to-end zigzag barcode computation."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .barcode import convert_barcode
from .conversion import convert_filt
from .filtration import ZigzagFiltration, check_valid, close_filtration
from .intervals import ZigzagInterval
from .reduction import reduce


@dataclass
class PhaseTimes:
    convert: float = 0.0
    reduce: float = 0.0
    map: float = 0.0
    extra: dict[str, float] = field(default_factory=dict)


def fast_zigzag(
    f: ZigzagFiltration, *, validate: bool = True, times: PhaseTimes | None = None
) -> list[ZigzagInterval]:
    """Barcode of ``f`` (closed first if it does not end empty).

    Intervals are over complex indices 0..m of the closed filtration.
    """
    if validate:
        check_valid(f)
    f = close_filtration(f)
    t0 = time.perf_counter()
    D, reg = convert_filt(f)
    t1 = time.perf_counter()
    result = reduce(D)
    t2 = time.perf_counter()
    bars = convert_barcode(result, reg)
    t3 = time.perf_counter()
    if times is not None:
        times.convert, times.reduce, times.map = t1 - t0, t2 - t1, t3 - t2
    return bars
