"""Standard persistence of a cell-wise filtration by GF(2) column reduction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, TextIO

from .conversion import BoundaryMatrix


class PersistencePair(NamedTuple):
    birth_pos: int
    death_pos: int
    dim: int


@dataclass
class ReductionResult:
    pairs: list[PersistencePair]
    # (position, dim) of unpaired columns
    essential: list[tuple[int, int]] = field(default_factory=list)

    def pair_set(self) -> set[tuple[int, int]]:
        return {(p.birth_pos, p.death_pos) for p in self.pairs}

    def dump(self, out: TextIO) -> None:
        for p in sorted(self.pairs, key=lambda p: p.birth_pos):
            out.write(f"{p.dim} {p.birth_pos} {p.death_pos}\n")


def low(column: list[int]) -> int | None:
    return column[-1] if column else None


def _add(a: list[int], b: list[int]) -> list[int]:
    s = set(a)
    s.symmetric_difference_update(b)
    return sorted(s)


def _check_shape(D: BoundaryMatrix) -> None:
    if len(D.dims) != len(D.columns):
        raise ValueError("dims and columns differ in length")
    for j, col in enumerate(D.columns):
        if col and col[-1] >= j:
            raise ValueError(f"column {j} has row {col[-1]} >= its position")


def _order(D: BoundaryMatrix, clearing: bool) -> list[int]:
    if not clearing:
        return list(range(len(D.columns)))
    top = max(D.dims, default=-1)
    by_dim: list[list[int]] = [[] for _ in range(top + 1)]
    for j, d in enumerate(D.dims):
        by_dim[d].append(j)
    return [j for d in range(top, -1, -1) for j in by_dim[d]]


def reduce(D: BoundaryMatrix, clearing: bool = True, backend: str = "auto") -> ReductionResult:
    """Persistence pairs of ``D``.

    With ``clearing`` the columns are processed one dimension at a time from
    the top down, and a column known to be a birth is skipped.  Otherwise the
    plain left-to-right reduction is used.  ``backend`` is ``"python"``,
    ``"jit"`` (numba), or ``"auto"`` (jit above a few thousand columns).
    ``D`` is left untouched.
    """
    _check_shape(D)
    if backend == "auto":
        backend = "jit" if len(D.columns) > JIT_THRESHOLD else "python"
    if backend == "jit":
        pivot_of, zero = _reduce_jit(D, clearing)
    elif backend == "python":
        pivot_of, zero = _reduce_python(D, clearing)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    pairs = sorted(
        (PersistencePair(i, j, D.dims[i]) for i, j in pivot_of.items()),
        key=lambda p: p.death_pos,
    )
    essential = [(j, D.dims[j]) for j in zero if j not in pivot_of]
    return ReductionResult(pairs, essential)


JIT_THRESHOLD = 5000


def _reduce_python(D: BoundaryMatrix, clearing: bool) -> tuple[dict[int, int], list[int]]:
    cols = list(D.columns)
    pivot_of: dict[int, int] = {}
    cleared = bytearray(len(cols))
    for j in _order(D, clearing):
        if cleared[j]:
            cols[j] = []
            continue
        col = cols[j]
        while col:
            k = pivot_of.get(col[-1])
            if k is None:
                break
            col = _add(col, cols[k])
        cols[j] = col
        if col:
            pivot_of[col[-1]] = j
            cleared[col[-1]] = 1
    return pivot_of, [j for j, c in enumerate(cols) if not c]


def _reduce_jit(D: BoundaryMatrix, clearing: bool) -> tuple[dict[int, int], list[int]]:
    import numpy as np

    from ._reduce_jit import reduce_csr

    lengths = np.fromiter((len(c) for c in D.columns), np.int64, len(D.columns))
    indptr = np.zeros(len(D.columns) + 1, np.int64)
    np.cumsum(lengths, out=indptr[1:])
    indices = np.fromiter(
        (r for c in D.columns for r in c), np.int64, int(indptr[-1])
    )
    order = np.asarray(_order(D, clearing), np.int64)
    pivot_of, nonzero = reduce_csr(indptr, indices, order)
    rows = np.flatnonzero(pivot_of >= 0)
    pairs = dict(zip(rows.tolist(), pivot_of[rows].tolist()))
    return pairs, np.flatnonzero(nonzero == 0).tolist()
