"""Conversion of a zigzag filtration into one coned, non-zigzag filtration.

Every insertion creates a fresh Δ-complex cell, so a simplex inserted twice
becomes two distinct cells.  Cells are laid out as columns of a boundary matrix
in the order

    0          the cone apex ω
    1..n       input cells in insertion order
    n+1..2n    cones of input cells, in reverse deletion order

Column position and cell id coincide.
"""
from __future__ import annotations

import gc
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, TextIO

from .filtration import INSERT, FiltrationError, Simplex, ZigzagFiltration

OMEGA = 0


class ConversionError(FiltrationError):
    pass


@dataclass(frozen=True)
class CellRecord:
    cell_id: int
    dim: int
    simplex: Simplex
    boundary: tuple[int, ...]
    pos_add: int
    pos_del: int
    add_rank: int
    del_rank: int


@dataclass
class BoundaryMatrix:
    """Sparse GF(2) boundary matrix; each column is a sorted list of row positions."""

    columns: list[list[int]]
    dims: list[int]

    def __len__(self) -> int:
        return len(self.columns)

    def column(self, j: int) -> list[int]:
        return self.columns[j]

    def copy(self) -> "BoundaryMatrix":
        return BoundaryMatrix([list(c) for c in self.columns], list(self.dims))

    def check(self) -> None:
        """Raise ``ValueError`` unless columns are sorted, lower-triangular and ∂∂ = 0."""
        for j, col in enumerate(self.columns):
            if any(a >= b for a, b in zip(col, col[1:])):
                raise ValueError(f"column {j} not strictly sorted")
            if col and col[-1] >= j:
                raise ValueError(f"column {j} has row {col[-1]} not before it")
            if any(self.dims[r] != self.dims[j] - 1 for r in col):
                raise ValueError(f"column {j} has an entry of the wrong dimension")
            acc: set[int] = set()
            for r in col:
                acc.symmetric_difference_update(self.columns[r])
            if acc:
                raise ValueError(f"boundary of boundary of column {j} is {sorted(acc)}")

    def dump(self, out: TextIO) -> None:
        """Write one ``pos dim: r1 r2 ...`` line per column."""
        for j, (col, d) in enumerate(zip(self.columns, self.dims)):
            out.write(f"{j} {d}: {' '.join(map(str, col))}".rstrip() + "\n")


@dataclass
class CellRegistry:
    """Per-cell metadata of a conversion, indexed by cell id 1..n (index 0 is ω)."""

    n: int
    simplices: list[Simplex | None]
    pos_add: list[int]
    pos_del: list[int]
    # del_order[k-1] is the cell id of the k-th deletion
    del_order: list[int]
    del_rank: list[int]
    cone_id: list[int]
    dims: list[int]
    boundaries: list[list[int]]
    omega_id: int = OMEGA

    def by_add_rank(self, k: int) -> int:
        # cells are numbered in insertion order
        return k

    def by_del_rank(self, k: int) -> int:
        return self.del_order[k - 1]

    def coned_cell(self, pos: int) -> int:
        """Input cell whose cone sits at column position ``pos`` (``n < pos <= 2n``)."""
        return self.del_order[2 * self.n - pos]

    def cell(self, cell_id: int) -> CellRecord:
        if not 1 <= cell_id <= self.n:
            raise IndexError(cell_id)
        return CellRecord(
            cell_id=cell_id,
            dim=self.dims[cell_id],
            simplex=self.simplices[cell_id],
            boundary=tuple(self.boundaries[cell_id]),
            pos_add=self.pos_add[cell_id],
            pos_del=self.pos_del[cell_id],
            add_rank=cell_id,
            del_rank=self.del_rank[cell_id],
        )


def cell_boundary(s: Simplex, cid: dict[Simplex, int]) -> list[int]:
    """Cell ids of the current copies of the facets of ``s``, sorted."""
    if len(s) == 1:
        return []
    try:
        col = [cid[s[:k] + s[k + 1:]] for k in range(len(s))]
    except KeyError as e:
        raise ConversionError(f"facet {list(e.args[0])} of {list(s)} is not present") from None
    col.sort()
    return col


def coned_cell_boundary(del_id: int, D: BoundaryMatrix, cone_id: dict[int, int] | list[int]) -> list[int]:
    """Boundary of the cone over cell ``del_id``: the cell itself plus cones of its facets."""
    col = D.columns[del_id]
    cones = []
    for f in col:
        try:
            c = cone_id[f]
        except (KeyError, IndexError):
            c = -1
        if c < 0:
            raise ConversionError(f"cone of facet {f} of cell {del_id} not yet created")
        cones.append(c)
    if not col:
        cones = [OMEGA]
    cones.append(del_id)
    cones.sort()
    return cones


@contextmanager
def gc_paused() -> Iterator[None]:
    """Suspend the cyclic collector while building large acyclic containers.

    Left on, its full collections rescan every live list, so conversion of m
    ops would cost more than O(m).
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def convert_filt(f: ZigzagFiltration) -> tuple[BoundaryMatrix, CellRegistry]:
    """Build the coned boundary matrix and cell registry of a closed filtration."""
    with gc_paused():
        return _convert(f)


def _convert(f: ZigzagFiltration) -> tuple[BoundaryMatrix, CellRegistry]:
    columns: list[list[int]] = [[]]
    dims: list[int] = [0]
    simplices: list[Simplex | None] = [None]
    pos_add: list[int] = [-1]
    cid: dict[Simplex, int] = {}
    del_list: list[int] = []
    del_pos: list[int] = []

    for i, (kind, s) in enumerate(f.ops):
        if kind is INSERT:
            if s in cid:
                raise ConversionError(f"op {i}: duplicate insert of {list(s)}")
            col = cell_boundary(s, cid)
            cid[s] = len(columns)
            columns.append(col)
            dims.append(len(s) - 1)
            simplices.append(s)
            pos_add.append(i)
        else:
            try:
                del_list.append(cid.pop(s))
            except KeyError:
                raise ConversionError(f"op {i}: deleting absent simplex {list(s)}") from None
            del_pos.append(i)
    if cid:
        raise ConversionError(f"filtration is not closed: {len(cid)} simplices remain")

    n = len(columns) - 1
    pos_del = [-1] * (n + 1)
    del_rank = [0] * (n + 1)
    for k, (c, p) in enumerate(zip(del_list, del_pos), start=1):
        pos_del[c] = p
        del_rank[c] = k

    D = BoundaryMatrix(columns, dims)
    cone_id = [-1] * (n + 1)
    for del_id in reversed(del_list):
        cone_id[del_id] = len(columns)
        col = coned_cell_boundary(del_id, D, cone_id)
        columns.append(col)
        dims.append(dims[del_id] + 1)

    boundaries = columns[: n + 1]
    reg = CellRegistry(
        n=n,
        simplices=simplices,
        pos_add=pos_add,
        pos_del=pos_del,
        del_order=del_list,
        del_rank=del_rank,
        cone_id=cone_id,
        dims=dims[: n + 1],
        boundaries=boundaries,
    )
    return D, reg
