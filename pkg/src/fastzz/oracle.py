"""Brute-force zigzag barcodes for small filtrations.

Homology of every complex is computed from scratch over GF(2), the maps
between neighbouring homology groups are found by solving for coordinates, and
interval multiplicities come from the rank of the limit-to-colimit map over
every window of the zigzag module, by inclusion-exclusion.  Nothing here
touches the conversion pipeline.

GF(2) vectors are Python ints used as bit sets.
"""
from __future__ import annotations

from dataclasses import dataclass

from .filtration import INSERT, Simplex, ZigzagFiltration, facets
from .intervals import ZigzagInterval, endpoint_type

DEFAULT_MAX_LENGTH = 64


class OracleError(RuntimeError):
    pass


class OracleRefused(OracleError):
    pass


# ---------------------------------------------------------------------------
# GF(2) helpers


class Echelon:
    """Incrementally built echelon basis; each vector carries a tracking mask."""

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}

    def reduce(self, v: int, track: int = 0) -> tuple[int, int]:
        """Clear every pivot bit of ``v``; returns the residue and accumulated tracking."""
        for top in sorted(self.rows, reverse=True):
            if v >> top & 1:
                row, t = self.rows[top]
                v ^= row
                track ^= t
        return v, track

    def add(self, v: int, track: int = 0) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        while v:
            top = v.bit_length() - 1
            row = self.rows.get(top)
            if row is None:
                self.rows[top] = (v, track)
                return True
            v ^= row[0]
            track ^= row[1]
        return False

    def __len__(self) -> int:
        return len(self.rows)


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def kernel(columns: list[int]) -> list[int]:
    """Basis of {x : XOR of columns[k] over bits k of x = 0}, as bit masks over columns."""
    e = Echelon()
    out = []
    for k, c in enumerate(columns):
        v, t = c, 1 << k
        while v:
            top = v.bit_length() - 1
            row = e.rows.get(top)
            if row is None:
                e.rows[top] = (v, t)
                break
            v ^= row[0]
            t ^= row[1]
        else:
            out.append(t)
    return out


def apply(matrix: list[int], x: int) -> int:
    """Image of ``x`` under the linear map whose k-th column is ``matrix[k]``."""
    out = 0
    k = 0
    while x:
        if x & 1:
            out ^= matrix[k]
        x >>= 1
        k += 1
    return out


# ---------------------------------------------------------------------------
# homology of one complex


class _Homology:
    """Basis of H_p(K) with a coordinate solver."""

    def __init__(self, complex_: frozenset[Simplex], p: int, index: dict[Simplex, int]):
        chains = sorted(s for s in complex_ if len(s) == p + 1)
        boundaries = Echelon()
        for s in complex_:
            if len(s) == p + 2:
                boundaries.add(_boundary(s, index))
        cycles = kernel([_boundary(s, index) for s in chains])
        self._solver = Echelon()
        self._solver.rows = dict(boundaries.rows)
        self.reps: list[int] = []
        for z in cycles:
            chain = 0
            for k, s in enumerate(chains):
                if z >> k & 1:
                    chain |= 1 << index[s]
            if self._solver.add(chain, 1 << len(self.reps)):
                self.reps.append(chain)

    def coords(self, z: int) -> int:
        residue, track = self._solver.reduce(z)
        if residue:
            raise OracleError("chain is not a cycle of this complex")
        return track


def _boundary(s: Simplex, index: dict[Simplex, int]) -> int:
    v = 0
    for fc in facets(s):
        v |= 1 << index[fc]
    return v


@dataclass
class HomologyDiagram:
    """Zigzag module H_p(K_0) <-> ... <-> H_p(K_m) for p = 0..max_dim.

    ``dims[p][t]`` is dim H_p(K_t); ``reps[p][t]`` are cycle representatives
    as chain bit masks.  ``maps[p][t]`` is the matrix (list of columns) of the
    arrow between t and t+1, pointing from t to t+1 when ``forward[t]`` and
    from t+1 to t otherwise.
    """

    m: int
    max_dim: int
    forward: list[bool]
    dims: list[list[int]]
    reps: list[list[list[int]]]
    maps: list[list[list[int]]]


def build_diagram(
    f: ZigzagFiltration, max_dim: int | None = None, max_length: int = DEFAULT_MAX_LENGTH
) -> HomologyDiagram:
    m = len(f)
    if m > max_length:
        raise OracleRefused(f"filtration of length {m} exceeds the oracle bound {max_length}")
    top = f.max_dim()
    if max_dim is None:
        max_dim = max(top, 0)
    elif top > max_dim:
        raise OracleRefused(f"filtration has a {top}-simplex but max_dim is {max_dim}")
    index: dict[Simplex, int] = {}
    for op in f.ops:
        index.setdefault(op.simplex, len(index))
    complexes = list(f.complexes())
    if complexes[-1]:
        raise OracleRefused("filtration does not end at the empty complex")
    forward = [op.kind is INSERT for op in f.ops]

    dims, reps, maps = [], [], []
    for p in range(max_dim + 1):
        hs = [_Homology(K, p, index) for K in complexes]
        dims.append([len(h.reps) for h in hs])
        reps.append([h.reps for h in hs])
        arrows = []
        for t in range(m):
            src, dst = (hs[t], hs[t + 1]) if forward[t] else (hs[t + 1], hs[t])
            arrows.append([dst.coords(z) for z in src.reps])
        maps.append(arrows)
    return HomologyDiagram(m, max_dim, forward, dims, reps, maps)


# ---------------------------------------------------------------------------
# rank invariant


def rank_invariant(diag: HomologyDiagram, p: int, i: int, j: int) -> int:
    """Rank of the limit -> colimit map of the window i..j of the degree-p module.

    Built explicitly: the limit is the kernel of the stacked compatibility
    constraints and the colimit the cokernel of the stacked relations.
    """
    if not 0 <= i <= j <= diag.m:
        raise IndexError(f"window [{i}, {j}] outside 0..{diag.m}")
    h = diag.dims[p]
    offset = {}
    total = 0
    for t in range(i, j + 1):
        offset[t] = total
        total += h[t]

    # one column per coordinate of V_i + ... + V_j, one row per constraint
    constraint_cols = [0] * total
    relations = []
    row = 0
    for t in range(i, j):
        fmap = diag.maps[p][t]
        src, dst = (t, t + 1) if diag.forward[t] else (t + 1, t)
        # constraint: map(x_src) + x_dst = 0, one row per basis vector of V_dst
        for k in range(h[src]):
            constraint_cols[offset[src] + k] ^= fmap[k] << row
            relations.append((1 << (offset[src] + k)) ^ (fmap[k] << offset[dst]))
        for k in range(h[dst]):
            constraint_cols[offset[dst] + k] ^= 1 << (row + k)
        row += h[dst]

    limit = kernel(constraint_cols)
    window_i = (1 << h[i]) - 1
    images = [x & window_i for x in limit]
    return rank(relations + images) - rank(relations)


def rank_table(diag: HomologyDiagram, p: int) -> dict[tuple[int, int], int]:
    """r(i, j) for all 1 <= i <= j <= m-1, sweeping j for each fixed i.

    Tracks the image of the limit in V_i (+) V_j and the colimit with the
    canonical maps out of V_i and V_j; equal to ``rank_invariant`` window by
    window but linear in the window length.
    """
    h = diag.dims[p]
    m = diag.m
    table = {}
    for i in range(1, m):
        hi = h[i]
        sections = [(1 << k, 1 << k) for k in range(hi)]
        q = hi
        alpha = [1 << k for k in range(hi)]
        beta = list(alpha)
        for j in range(i, m):
            table[i, j] = rank(apply(alpha, a) for a, _ in sections)
            if j == m - 1:
                break
            fmap = diag.maps[p][j]
            hj, hn = h[j], h[j + 1]
            if diag.forward[j]:
                sections = [(a, apply(fmap, b)) for a, b in sections]
                # pushout of Q <- V_j -> V_{j+1} inside Q (+) V_{j+1}
                rel = Echelon()
                for k in range(hj):
                    rel.add(beta[k] | (fmap[k] << q))
                free = [bit for bit in range(q + hn) if bit not in rel.rows]
                slot = {bit: k for k, bit in enumerate(free)}

                def project(v: int) -> int:
                    v, _ = rel.reduce(v)
                    out = 0
                    while v:
                        top = v.bit_length() - 1
                        out |= 1 << slot[top]
                        v ^= 1 << top
                    return out

                alpha = [project(v) for v in alpha]
                beta = [project(1 << (q + k)) for k in range(hn)]
                q = len(free)
            else:
                # sections extend by any y with map(y) = current V_j part
                cols = [b for _, b in sections] + fmap
                grown = []
                for x in kernel(cols):
                    lam, mu = x & ((1 << len(sections)) - 1), x >> len(sections)
                    a = 0
                    for k, (ak, _) in enumerate(sections):
                        if lam >> k & 1:
                            a ^= ak
                    grown.append((a, mu))
                sections = grown
                beta = [apply(beta, fmap[k]) for k in range(hn)]
            # keep an independent spanning set
            e = Echelon()
            sections = [(a, b) for a, b in sections if e.add(a | (b << hi))]
    return table


def oracle_barcode(
    f: ZigzagFiltration, max_dim: int | None = None, max_length: int = DEFAULT_MAX_LENGTH
) -> list[ZigzagInterval]:
    """Typed barcode of a closed filtration, sorted like the pipeline output."""
    diag = build_diagram(f, max_dim, max_length)
    m = diag.m
    out = []
    for p in range(diag.max_dim + 1):
        r = rank_table(diag, p)

        def rk(i: int, j: int) -> int:
            return r.get((i, j), 0) if 1 <= i <= j <= m - 1 else 0

        for b in range(1, m):
            for d in range(b, m):
                mult = rk(b, d) - rk(b - 1, d) - rk(b, d + 1) + rk(b - 1, d + 1)
                if mult < 0:
                    raise OracleError(f"negative multiplicity {mult} for [{b}, {d}] in dim {p}")
                out.extend([ZigzagInterval(p, b, d, endpoint_type(f, b, d))] * mult)
    if 2 * len(out) != m:
        raise OracleError(f"{len(out)} intervals for a closed filtration of length {m}")
    return sorted(out)
