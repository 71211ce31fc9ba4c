"""Typed zigzag intervals and their text format."""
from __future__ import annotations

from typing import Iterable, NamedTuple, TextIO

from .filtration import INSERT, ZigzagFiltration

TYPES = ("CC", "CO", "OC", "OO")


class ZigzagInterval(NamedTuple):
    """Class of dimension ``dim`` alive in complexes K_b..K_d."""

    dim: int
    b: int
    d: int
    type: str

    def __str__(self) -> str:
        return f"{self.dim} {self.b} {self.d} {self.type}"


def endpoint_type(f: ZigzagFiltration, b: int, d: int) -> str:
    """Type of [b, d] from the arrow directions around it.

    The birth is closed when op b-1 is an insertion, the death is closed when
    op d is a deletion.
    """
    birth = "C" if f.ops[b - 1].kind is INSERT else "O"
    death = "O" if f.ops[d].kind is INSERT else "C"
    return birth + death


def write_barcode(intervals: Iterable[ZigzagInterval], out: TextIO) -> None:
    for iv in intervals:
        out.write(f"{iv}\n")


def parse_barcode(text: str) -> list[ZigzagInterval]:
    out = []
    for line in text.splitlines():
        if line.strip():
            p, b, d, t = line.split()
            if t not in TYPES:
                raise ValueError(f"unknown interval type {t!r}")
            out.append(ZigzagInterval(int(p), int(b), int(d), t))
    return out
