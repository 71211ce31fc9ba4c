"""Simplex-wise zigzag filtrations: parsing, validation, closing and generators.

A filtration is a sequence of single-simplex insertions and deletions that
starts from the empty complex.  Simplices are tuples of strictly increasing
vertex ids.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, TextIO

Simplex = tuple[int, ...]


class FiltrationError(ValueError):
    """Raised for malformed or inconsistent filtration input."""


class ParseError(FiltrationError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class OpKind(enum.Enum):
    INSERT = "i"
    DELETE = "d"


INSERT = OpKind.INSERT
DELETE = OpKind.DELETE


class FiltrationOp(NamedTuple):
    kind: OpKind
    simplex: Simplex

    @property
    def is_insert(self) -> bool:
        return self.kind is INSERT

    def __str__(self) -> str:
        return " ".join([self.kind.value, *map(str, self.simplex)])


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Return the canonical (sorted) simplex over ``vertices``."""
    s = tuple(sorted(vertices))
    if not s:
        raise FiltrationError("simplex must have at least one vertex")
    for a, b in zip(s, s[1:]):
        if a == b:
            raise FiltrationError(f"repeated vertex {a} in simplex")
    if s[0] < 0:
        raise FiltrationError(f"negative vertex id {s[0]}")
    return s


def facets(s: Simplex) -> list[Simplex]:
    """Codimension-one faces of ``s``; empty for vertices."""
    if len(s) == 1:
        return []
    return [s[:k] + s[k + 1:] for k in range(len(s))]


def dim(s: Simplex) -> int:
    return len(s) - 1


@dataclass(frozen=True)
class ZigzagFiltration:
    ops: tuple[FiltrationOp, ...] = ()

    def __post_init__(self):
        if not isinstance(self.ops, tuple):
            object.__setattr__(self, "ops", tuple(self.ops))

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[FiltrationOp]:
        return iter(self.ops)

    def __getitem__(self, k):
        return self.ops[k]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, Iterable[int]]]) -> "ZigzagFiltration":
        """Build from ``("i", verts)`` / ``("d", verts)`` pairs (handy in tests)."""
        return cls(tuple(FiltrationOp(OpKind(k), make_simplex(v)) for k, v in pairs))

    def max_dim(self) -> int:
        return max((len(op.simplex) - 1 for op in self.ops), default=-1)

    def repetitiveness(self) -> float:
        """Number of insertions divided by the number of distinct simplices inserted."""
        inserted = [op.simplex for op in self.ops if op.kind is INSERT]
        if not inserted:
            return 0.0
        return len(inserted) / len(set(inserted))

    def complexes(self) -> Iterator[frozenset[Simplex]]:
        """Yield K_0, K_1, ..., K_m as frozensets (quadratic; small inputs only)."""
        live: set[Simplex] = set()
        yield frozenset()
        for op in self.ops:
            if op.kind is INSERT:
                live.add(op.simplex)
            else:
                live.discard(op.simplex)
            yield frozenset(live)

    def to_text(self) -> str:
        return "".join(f"{op}\n" for op in self.ops)


# ---------------------------------------------------------------------------
# parsing


def parse_ops(text: str | TextIO | Iterable[str]) -> ZigzagFiltration:
    """Parse the line format ``i v1 v2 ...`` / ``d v1 v2 ...``.

    Blank lines and lines starting with ``#`` are skipped.  Vertex lists may be
    unsorted; a vertex repeated within one line is an error.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    ops = []
    kinds = {"i": INSERT, "d": DELETE}
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        kind = kinds.get(tokens[0])
        if kind is None:
            raise ParseError(lineno, f"unknown opcode {tokens[0]!r}")
        if len(tokens) < 2:
            raise ParseError(lineno, "missing vertex list")
        try:
            verts = [int(t) for t in tokens[1:]]
        except ValueError:
            raise ParseError(lineno, f"non-integer vertex in {line.strip()!r}") from None
        try:
            simplex = make_simplex(verts)
        except FiltrationError as e:
            raise ParseError(lineno, str(e)) from None
        ops.append(FiltrationOp(kind, simplex))
    return ZigzagFiltration(tuple(ops))


def write_ops(f: ZigzagFiltration, out: TextIO) -> None:
    for op in f.ops:
        out.write(f"{op}\n")


# ---------------------------------------------------------------------------
# validation


class LiveComplex:
    """Mutable simplicial complex with cofacet counts, used to replay ops."""

    def __init__(self):
        self.live: set[Simplex] = set()
        self.cofacets: dict[Simplex, int] = {}

    def __contains__(self, s: Simplex) -> bool:
        return s in self.live

    def __len__(self) -> int:
        return len(self.live)

    def insert_error(self, s: Simplex) -> str | None:
        if s in self.live:
            return f"duplicate insert of {list(s)}"
        for fc in facets(s):
            if fc not in self.live:
                return f"face {list(fc)} missing"
        return None

    def delete_error(self, s: Simplex) -> str | None:
        if s not in self.live:
            return f"deleting absent simplex {list(s)}"
        if self.cofacets.get(s, 0):
            coface = next(c for c in self.live if len(c) == len(s) + 1 and set(s) <= set(c))
            return f"live coface {list(coface)}"
        return None

    def insert(self, s: Simplex) -> None:
        self.live.add(s)
        for fc in facets(s):
            self.cofacets[fc] = self.cofacets.get(fc, 0) + 1

    def delete(self, s: Simplex) -> None:
        self.live.remove(s)
        self.cofacets.pop(s, None)
        for fc in facets(s):
            self.cofacets[fc] -= 1

    def apply(self, op: FiltrationOp) -> str | None:
        """Apply ``op`` if legal; return the reason it is illegal otherwise."""
        if op.kind is INSERT:
            err = self.insert_error(op.simplex)
            if err is None:
                self.insert(op.simplex)
        else:
            err = self.delete_error(op.simplex)
            if err is None:
                self.delete(op.simplex)
        return err


@dataclass
class ValidationReport:
    ok: bool
    index: int | None = None
    reason: str | None = None
    final_size: int = 0
    max_size: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "OK"
        return f"op {self.index}: {self.reason}"


def validate(f: ZigzagFiltration) -> ValidationReport:
    """Check that every prefix of ``f`` is a simplicial complex."""
    cx = LiveComplex()
    biggest = 0
    for k, op in enumerate(f.ops):
        err = cx.apply(op)
        if err is not None:
            return ValidationReport(False, k, err, len(cx), biggest)
        biggest = max(biggest, len(cx))
    return ValidationReport(True, final_size=len(cx), max_size=biggest)


def check_valid(f: ZigzagFiltration) -> None:
    report = validate(f)
    if not report:
        raise FiltrationError(f"invalid filtration at {report}")


def close_filtration(f: ZigzagFiltration) -> ZigzagFiltration:
    """Append deletions so that ``f`` ends at the empty complex.

    Remaining simplices go highest dimension first, and within a dimension the
    most recently inserted first.  ``f`` must be valid.
    """
    last_insert: dict[Simplex, int] = {}
    for k, op in enumerate(f.ops):
        if op.kind is INSERT:
            last_insert[op.simplex] = k
        else:
            del last_insert[op.simplex]
    if not last_insert:
        return f
    tail = sorted(last_insert, key=lambda s: (len(s), last_insert[s]), reverse=True)
    return ZigzagFiltration(f.ops + tuple(FiltrationOp(DELETE, s) for s in tail))


# ---------------------------------------------------------------------------
# generators


def _cliques_through_edge(adj: dict[int, set[int]], u: int, v: int, max_dim: int) -> list[Simplex]:
    """All cliques of dimension 2..max_dim containing edge ``uv``, sorted by (dim, vertices)."""
    out: list[Simplex] = []
    common = sorted(adj[u] & adj[v])

    def extend(clique: list[int], cands: list[int]):
        for k, w in enumerate(cands):
            grown = clique + [w]
            out.append(tuple(sorted(grown)))
            if len(grown) - 1 < max_dim:
                extend(grown, [x for x in cands[k + 1:] if x in adj[w]])

    if max_dim >= 2:
        extend([u, v], common)
    out.sort(key=lambda s: (len(s), s))
    return out


def gen_clique_zigzag(
    edge_events: Iterable[tuple[OpKind | str, tuple[int, int]]],
    max_dim: int,
    max_length: int | None = None,
) -> ZigzagFiltration:
    """Simplex-wise filtration of clique complexes driven by edge events.

    Each edge insertion adds the edge followed by every newly formed clique of
    dimension ``<= max_dim`` (increasing dimension).  Each edge deletion first
    removes every clique containing the edge (decreasing dimension).  Vertices
    are inserted the first time an incident edge appears.  The result is closed.

    With ``max_length``, events stop being consumed once the closed length
    would reach it (the events may then be an endless iterator).
    """
    if max_dim < 1:
        raise FiltrationError("max_dim must be at least 1 for clique filtrations")
    adj: dict[int, set[int]] = {}
    ops: list[FiltrationOp] = []
    live = 0
    for k, (kind, edge) in enumerate(edge_events):
        if max_length is not None and len(ops) + live >= max_length:
            break
        kind = OpKind(kind) if isinstance(kind, str) else kind
        u, v = edge
        if u == v:
            raise FiltrationError(f"edge event {k}: self-loop on {u}")
        if u > v:
            u, v = v, u
        present = u in adj and v in adj[u]
        if kind is INSERT:
            if present:
                raise FiltrationError(f"edge event {k}: edge ({u}, {v}) already present")
            for w in (u, v):
                if w not in adj:
                    adj[w] = set()
                    ops.append(FiltrationOp(INSERT, (w,)))
                    live += 1
            ops.append(FiltrationOp(INSERT, (u, v)))
            cliques = _cliques_through_edge(adj, u, v, max_dim)
            ops.extend(FiltrationOp(INSERT, c) for c in cliques)
            live += len(cliques) + 1
            adj[u].add(v)
            adj[v].add(u)
        else:
            if not present:
                raise FiltrationError(f"edge event {k}: edge ({u}, {v}) not present")
            cliques = _cliques_through_edge(adj, u, v, max_dim)
            ops.extend(FiltrationOp(DELETE, c) for c in reversed(cliques))
            ops.append(FiltrationOp(DELETE, (u, v)))
            live -= len(cliques) + 1
            adj[u].discard(v)
            adj[v].discard(u)
    return close_filtration(ZigzagFiltration(tuple(ops)))


def iter_edge_events(num_vertices: int, seed: int, density: float = 0.1) -> Iterator[tuple[OpKind, tuple[int, int]]]:
    """Endless random valid insert/delete sequence of edges hovering around ``density``."""
    if num_vertices < 2:
        raise FiltrationError("need at least two vertices")
    if not 0 < density <= 1:
        raise FiltrationError("density must lie in (0, 1]")
    rng = random.Random(seed)
    total = num_vertices * (num_vertices - 1) // 2
    live: list[tuple[int, int]] = []
    where: dict[tuple[int, int], int] = {}
    while True:
        frac = len(live) / total
        if live and (len(live) == total or rng.random() < 0.5 * frac / density):
            k = rng.randrange(len(live))
            e = live[k]
            last = live.pop()
            if k < len(live):
                live[k] = last
                where[last] = k
            del where[e]
            yield DELETE, e
        else:
            while True:
                u, v = rng.sample(range(num_vertices), 2)
                e = (min(u, v), max(u, v))
                if e not in where:
                    break
            where[e] = len(live)
            live.append(e)
            yield INSERT, e


def random_edge_events(
    num_vertices: int, num_events: int, seed: int, density: float = 0.1
) -> list[tuple[OpKind, tuple[int, int]]]:
    return list(itertools.islice(iter_edge_events(num_vertices, seed, density), num_events))


def gen_clique_family(
    num_vertices: int,
    num_events: int | None,
    max_dim: int,
    seed: int,
    density: float = 0.1,
    max_length: int | None = None,
) -> ZigzagFiltration:
    """Clique filtration of random edge events; bounded by event count and/or length."""
    if num_events is None and max_length is None:
        raise FiltrationError("need num_events or max_length")
    events = iter_edge_events(num_vertices, seed, density)
    if num_events is not None:
        events = itertools.islice(events, num_events)
    return gen_clique_zigzag(events, max_dim, max_length)


def gen_random_zigzag(num_vertices: int, m_target: int, max_dim: int, seed: int) -> ZigzagFiltration:
    """Random simplex-wise zigzag filtration on ``num_vertices`` vertices.

    Ops are drawn until the closed length would reach ``m_target``; simplices
    are freely re-inserted after deletion.  Deterministic in ``seed``.
    """
    if num_vertices < 1 or m_target < 1 or max_dim < 0:
        raise FiltrationError("generator parameters must be positive")
    rng = random.Random(seed)
    cx = LiveComplex()
    ops: list[FiltrationOp] = []
    while len(ops) + len(cx) < m_target:
        # candidates sorted so that the draw does not depend on set iteration order
        addable = sorted(
            {(v,) for v in range(num_vertices) if (v,) not in cx}
            | {
                c
                for s in cx.live
                if len(s) <= max_dim
                for v in range(num_vertices)
                if v not in s
                for c in [tuple(sorted(s + (v,)))]
                if c not in cx and all(fc in cx for fc in facets(c))
            }
        )
        removable = sorted(s for s in cx.live if not cx.cofacets.get(s, 0))
        if addable and (not removable or rng.random() < 0.6):
            op = FiltrationOp(INSERT, rng.choice(addable))
        else:
            op = FiltrationOp(DELETE, rng.choice(removable))
        cx.apply(op)
        ops.append(op)
    return close_filtration(ZigzagFiltration(tuple(ops)))


def is_updown(f: ZigzagFiltration) -> bool:
    seen_delete = False
    for op in f.ops:
        if op.kind is DELETE:
            seen_delete = True
        elif seen_delete:
            return False
    return True


def shuffle_updown(f: ZigzagFiltration, seed: int) -> ZigzagFiltration:
    """Randomly interleave the insertions and deletions of an up-down filtration.

    The relative order of insertions and of deletions is kept; a deletion is
    scheduled only once the simplex and all its cofacets have been inserted, so
    every prefix stays a simplicial complex.
    """
    if not is_updown(f):
        raise FiltrationError("shuffle_updown requires an up-down filtration")
    check_valid(f)
    inserts = [op for op in f.ops if op.kind is INSERT]
    deletes = [op for op in f.ops if op.kind is DELETE]
    # cofacets not yet inserted, per simplex
    pending = {op.simplex: 0 for op in inserts}
    for op in inserts:
        for fc in facets(op.simplex):
            pending[fc] += 1
    inserted: set[Simplex] = set()
    rng = random.Random(seed)
    out: list[FiltrationOp] = []
    i = j = 0
    while i < len(inserts) or j < len(deletes):
        can_delete = j < len(deletes) and deletes[j].simplex in inserted and pending[deletes[j].simplex] == 0
        if i < len(inserts) and (not can_delete or rng.random() < 0.5):
            s = inserts[i].simplex
            inserted.add(s)
            for fc in facets(s):
                pending[fc] -= 1
            out.append(inserts[i])
            i += 1
        elif can_delete:
            out.append(deletes[j])
            j += 1
        else:
            raise FiltrationError(f"deletion of {list(deletes[j].simplex)} can never be scheduled")
    return ZigzagFiltration(tuple(out))


def gen_updown(num_vertices: int, edge_prob: float, max_dim: int, seed: int) -> ZigzagFiltration:
    """Up-down filtration of the clique complex of a random graph.

    Two random vertex orders act as heights: simplices are inserted as lower
    stars of the first and deleted as upper stars of the second.
    """
    rng = random.Random(seed)
    adj: dict[int, set[int]] = {v: set() for v in range(num_vertices)}
    for u, v in itertools.combinations(range(num_vertices), 2):
        if rng.random() < edge_prob:
            adj[u].add(v)
            adj[v].add(u)
    simplices: list[Simplex] = []

    def extend(clique: tuple[int, ...], cands: list[int]):
        simplices.append(clique)
        if len(clique) - 1 < max_dim:
            for k, w in enumerate(cands):
                extend(clique + (w,), [x for x in cands[k + 1:] if x in adj[w]])

    for v in range(num_vertices):
        extend((v,), sorted(x for x in adj[v] if x > v))

    up = list(range(num_vertices))
    down = list(range(num_vertices))
    rng.shuffle(up)
    rng.shuffle(down)
    up_rank = {v: k for k, v in enumerate(up)}
    down_rank = {v: k for k, v in enumerate(down)}
    inserts = sorted(simplices, key=lambda s: (max(up_rank[v] for v in s), len(s), s))
    deletes = sorted(simplices, key=lambda s: (min(down_rank[v] for v in s), -len(s), s))
    return ZigzagFiltration(
        tuple(FiltrationOp(INSERT, s) for s in inserts) + tuple(FiltrationOp(DELETE, s) for s in deletes)
    )


def gen_updown_shuffle(num_vertices: int, edge_prob: float, max_dim: int, seed: int) -> ZigzagFiltration:
    return shuffle_updown(gen_updown(num_vertices, edge_prob, max_dim, seed), seed)
