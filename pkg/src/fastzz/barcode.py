"""Mapping of standard persistence pairs back to typed zigzag intervals.

The coned filtration has n input cells at positions 1..n and n cones at
positions n+1..2n.  A pair (i, j) of column positions is an interval [i, j-1]
of the extended filtration, which maps to an interval of the up-down
filtration and from there to an interval of the input zigzag filtration.
Both steps are available separately (``map_extended_to_updown`` and
``map_updown_to_zigzag``); ``map_pair`` is the fused closed form used by the
pipeline.
"""
from __future__ import annotations

import enum

from .conversion import OMEGA, CellRegistry, gc_paused
from .intervals import ZigzagInterval, endpoint_type, parse_barcode, write_barcode  # noqa: F401
from .reduction import PersistencePair, ReductionResult


class BarcodeError(RuntimeError):
    pass


class PairClass(enum.Enum):
    ORD = "Ord"
    REL = "Rel"
    EXT = "Ext"


def classify_pair(pair: PersistencePair, n: int) -> PairClass:
    i, j = pair.birth_pos, pair.death_pos
    if not 1 <= i < j <= 2 * n:
        raise BarcodeError(f"pair ({i}, {j}) out of range for n={n}")
    if j <= n:
        return PairClass.ORD
    if i > n:
        return PairClass.REL
    return PairClass.EXT


# ---------------------------------------------------------------------------
# the two mapping tables, kept separate for differential testing


def map_extended_to_updown(b: int, d: int, p: int, n: int) -> tuple[str, int, int, int]:
    """Interval [b, d] of dim p in the extended filtration -> (type, b, d, dim) in the up-down one."""
    if d < n:
        return "CO", b, d, p
    if b > n:
        return "OC", 3 * n - d, 3 * n - b, p - 1
    return "CC", b, 3 * n - d - 1, p


def _op_position(reg: CellRegistry, k: int) -> int:
    """Input position of the k-th op (0-based) of the up-down filtration."""
    n = reg.n
    if k < n:
        return reg.pos_add[reg.by_add_rank(k + 1)]
    return reg.pos_del[reg.by_del_rank(k - n + 1)]


def map_by_positions(kind: str, creator: int, destroyer: int, p: int) -> ZigzagInterval:
    """Up-down interval of type ``kind`` and dim ``p`` whose creator and destroyer
    sit at input positions ``creator`` and ``destroyer``."""
    if kind in ("CO", "OC"):
        return ZigzagInterval(p, creator + 1, destroyer, kind)
    if kind != "CC":
        raise BarcodeError(f"up-down filtrations have no {kind} intervals")
    if creator < destroyer:
        return ZigzagInterval(p, creator + 1, destroyer, "CC")
    # creator and destroyer swap roles; the class drops one dimension
    return ZigzagInterval(p - 1, destroyer + 1, creator, "OO")


def map_updown_to_zigzag(kind: str, b: int, d: int, p: int, reg: CellRegistry) -> ZigzagInterval:
    """Interval [b, d] of the up-down filtration -> interval of the input filtration."""
    return map_by_positions(kind, _op_position(reg, b - 1), _op_position(reg, d), p)


def map_pair_composed(pair: PersistencePair, reg: CellRegistry) -> ZigzagInterval:
    i, j = pair.birth_pos, pair.death_pos
    # homology dimension in the coned filtration is the dim of the creating cell
    p = reg.dims[i] if i <= reg.n else reg.dims[reg.coned_cell(i)] + 1
    kind, b, d, q = map_extended_to_updown(i, j - 1, p, reg.n)
    return map_updown_to_zigzag(kind, b, d, q, reg)


# ---------------------------------------------------------------------------
# fused map


def map_pair(pair: PersistencePair, reg: CellRegistry) -> ZigzagInterval:
    i, j, n = pair.birth_pos, pair.death_pos, reg.n
    if not 1 <= i < j <= 2 * n:
        raise BarcodeError(f"pair ({i}, {j}) out of range for n={n}")
    if j <= n:
        return ZigzagInterval(reg.dims[i], reg.pos_add[i] + 1, reg.pos_add[j], "CO")
    # cell whose cone sits at column j
    cj = reg.del_order[2 * n - j]
    if i > n:
        ci = reg.del_order[2 * n - i]
        return ZigzagInterval(reg.dims[ci], reg.pos_del[cj] + 1, reg.pos_del[ci], "OC")
    added, deleted = reg.pos_add[i], reg.pos_del[cj]
    if added < deleted:
        return ZigzagInterval(reg.dims[i], added + 1, deleted, "CC")
    if reg.dims[i] == 0:
        raise BarcodeError(f"pair ({i}, {j}) would map to an interval of dimension -1")
    return ZigzagInterval(reg.dims[i] - 1, deleted + 1, added, "OO")


_TYPE_CODES = ("CC", "CO", "OC", "OO")


def map_pairs_array(births, deaths, reg: CellRegistry):
    """``map_pair`` over whole arrays of positions.

    Returns ``(dim, b, d, type_code)`` int64 arrays, with ``type_code``
    indexing ``("CC", "CO", "OC", "OO")``.
    """
    import numpy as np

    n = reg.n
    i = np.asarray(births, np.int64)
    j = np.asarray(deaths, np.int64)
    if i.size and not (np.all(1 <= i) and np.all(i < j) and np.all(j <= 2 * n)):
        raise BarcodeError(f"pair positions out of range for n={n}")
    pos_add = np.asarray(reg.pos_add, np.int64)
    pos_del = np.asarray(reg.pos_del, np.int64)
    dims = np.asarray(reg.dims, np.int64)
    del_order = np.asarray(reg.del_order, np.int64)

    ordinary = j <= n
    relative = i > n
    # cells coned at columns i and j; clipped where the column is not a cone
    ci = del_order[np.clip(2 * n - i, 0, max(n - 1, 0))] if n else i
    cj = del_order[np.clip(2 * n - j, 0, max(n - 1, 0))] if n else j
    added = pos_add[np.where(relative, 0, i)]
    deleted = pos_del[cj]
    swapped = ~ordinary & ~relative & (added > deleted)

    dim = np.where(relative, dims[ci], dims[np.where(relative, 0, i)] - swapped)
    b = np.select([ordinary, relative, swapped], [added + 1, deleted + 1, deleted + 1], added + 1)
    d = np.select(
        [ordinary, relative, swapped], [pos_add[np.where(ordinary, j, 0)], pos_del[ci], added], deleted
    )
    code = np.select([ordinary, relative, swapped], [1, 2, 3], 0)
    if np.any(dim < 0):
        k = int(np.flatnonzero(dim < 0)[0])
        raise BarcodeError(f"pair ({i[k]}, {j[k]}) would map to an interval of dimension -1")
    return dim, b, d, code


def convert_barcode(result: ReductionResult, reg: CellRegistry) -> list[ZigzagInterval]:
    """Typed zigzag barcode, sorted by (dim, b, d, type); the ω class is dropped."""
    import numpy as np

    if result.essential != [(OMEGA, 0)]:
        raise BarcodeError(f"expected a single essential class at ω, got {result.essential}")
    births = np.fromiter((p.birth_pos for p in result.pairs), np.int64, len(result.pairs))
    deaths = np.fromiter((p.death_pos for p in result.pairs), np.int64, len(result.pairs))
    dim, b, d, code = map_pairs_array(births, deaths, reg)
    order = np.lexsort((code, d, b, dim))
    with gc_paused():
        return [
            ZigzagInterval(p, bb, dd, _TYPE_CODES[c])
            for p, bb, dd, c in zip(
                dim[order].tolist(), b[order].tolist(), d[order].tolist(), code[order].tolist()
            )
        ]
