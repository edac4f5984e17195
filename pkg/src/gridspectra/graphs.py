"""Immutable simple graphs: bitrow representation, named constructions, file I/O.

Vertices are integers 0..n-1. Adjacency is stored as one Python int per
vertex (bit j of ``rows[v]`` set iff v ~ j), which makes neighborhood
intersections and clique tests cheap and exact at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

from .errors import InvalidParameterError, ParseError


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph, immutable after construction."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameterError("graph must have at least one vertex")
        if len(self.rows) != self.n:
            raise InvalidParameterError("adjacency rows do not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise InvalidParameterError(f"row {v} references vertices >= n")
            if row >> v & 1:
                raise InvalidParameterError(f"self-loop at vertex {v}")
        for v in range(self.n):
            for u in bits(self.rows[v]):
                if not self.rows[u] >> v & 1:
                    raise InvalidParameterError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph from an iterable of endpoint pairs (duplicates merged)."""
        if n < 1:
            raise InvalidParameterError("graph must have at least one vertex")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor list per vertex."""
        return tuple(tuple(bits(row)) for row in self.rows)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    @cached_property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as pairs (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in bits(self.rows[u] >> (u + 1) << (u + 1)):
                yield u, v

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidParameterError(f"vertex {v} out of range for n={self.n}")


@dataclass(frozen=True)
class ExtensionParams:
    """The pair (s, t): clique size s and grid parameter t."""

    s: int
    t: int

    def __post_init__(self) -> None:
        if not (isinstance(self.s, int) and isinstance(self.t, int)):
            raise InvalidParameterError("s and t must be integers")
        if self.s < 1 or self.t < 1:
            raise InvalidParameterError("s and t must be positive")

    def require_extension_scale(self) -> None:
        """Checks that embody the grid-extension characterization need s >= 2."""
        if self.s < 2:
            raise InvalidParameterError("clique size s must be at least 2 here")


@dataclass(frozen=True)
class LocalGraph:
    """An induced subgraph together with the original vertex of each new index."""

    graph: Graph
    vertices: tuple[int, ...]


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def complete_graph(m: int) -> Graph:
    """K_m: every distinct pair adjacent."""
    if m < 1:
        raise InvalidParameterError("complete graph needs m >= 1")
    full = (1 << m) - 1
    return Graph(m, tuple(full ^ (1 << v) for v in range(m)))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex (u, v) gets index u * h.n + v."""
    n = g.n * h.n
    rows = [0] * n
    for u in range(g.n):
        for v in range(h.n):
            # same first coordinate, adjacent second
            row = h.rows[v] << (u * h.n)
            # adjacent first coordinate, same second
            for w in bits(g.rows[u]):
                row |= 1 << (w * h.n + v)
            rows[u * h.n + v] = row
    return Graph(n, tuple(rows))


def grid_graph(m: int) -> Graph:
    """The m x m rook's grid K_m x K_m; strongly regular (m^2, 2m-2, m-2, 2)."""
    if m < 2:
        raise InvalidParameterError("grid needs m >= 2")
    k = complete_graph(m)
    return cartesian_product(k, k)


def clique_extension(g: Graph, s: int) -> Graph:
    """Replace each vertex by an s-clique; vertex (x, i) gets index x * s + i.

    (x, i) ~ (y, j) iff x = y with i != j, or x ~ y in g.  For s = 1 this is
    an identically-labelled copy of g.
    """
    if s < 1:
        raise InvalidParameterError("clique extension needs s >= 1")
    block = (1 << s) - 1
    closed_rows = []
    for x in range(g.n):
        row = 0
        for y in bits(g.rows[x] | (1 << x)):
            row |= block << (y * s)
        closed_rows.append(row)
    rows = []
    for x in range(g.n):
        for i in range(s):
            rows.append(closed_rows[x] ^ (1 << (x * s + i)))
    return Graph(g.n * s, tuple(rows))


def shrikhande_graph() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}.

    Strongly regular (16, 6, 2, 2); its maximal cliques are triangles, which
    distinguishes it from the 4 x 4 grid it is cospectral with.
    """
    steps = ((1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3))
    edges = []
    for a in range(4):
        for b in range(4):
            for da, db in steps:
                edges.append((4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4))
    return Graph.from_edges(16, edges)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ g.rows[v] ^ (1 << v) for v in range(g.n)))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on the given vertices, renumbered in sorted order."""
    vs = sorted(set(vertices))
    if not vs:
        raise InvalidParameterError("induced subgraph needs at least one vertex")
    if vs[0] < 0 or vs[-1] >= g.n:
        raise InvalidParameterError("subgraph vertex out of range")
    index = {v: i for i, v in enumerate(vs)}
    rows = [0] * len(vs)
    for i, v in enumerate(vs):
        for u in bits(g.rows[v]):
            j = index.get(u)
            if j is not None:
                rows[i] |= 1 << j
    return Graph(len(vs), tuple(rows))


def local_graph(g: Graph, v: int) -> LocalGraph:
    """Subgraph induced on the neighborhood of v, with the index map back to g."""
    g._check_vertex(v)
    nbrs = g.neighbors[v]
    if not nbrs:
        raise InvalidParameterError(f"vertex {v} has no neighbors")
    return LocalGraph(induced_subgraph(g, nbrs), nbrs)


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= g.rows[v]
        frontier = grow & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def is_regular(g: Graph) -> bool:
    k = g.rows[0].bit_count()
    return all(row.bit_count() == k for row in g.rows)


# --- file formats ---------------------------------------------------------
#
# Edge-list format: first line "n m", then m lines "u v" (0-indexed).  Files
# written by this package list each edge once with u < v, sorted, so that a
# read/write round trip is byte identical.  graph6 is read-only interop.


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse edge-list text; errors name the offending 1-based line."""
    lines = text.splitlines()
    stripped = [(i + 1, line.strip()) for i, line in enumerate(lines)]
    content = [(no, line) for no, line in stripped if line]
    if not content:
        raise ParseError("line 1: missing header 'n m'")
    no, header = content[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"line {no}: header must be 'n m'")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"line {no}: header must be two integers") from None
    if n < 1:
        raise ParseError(f"line {no}: vertex count must be positive")
    if m < 0:
        raise ParseError(f"line {no}: edge count must be nonnegative")
    if len(content) - 1 != m:
        raise ParseError(f"line {no}: header promises {m} edges, file has {len(content) - 1}")
    rows = [0] * n
    seen = set()
    for no, line in content[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {no}: edge line must be 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {no}: edge line must be two integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {no}: vertex index out of range (n={n})")
        if u == v:
            raise ParseError(f"line {no}: loop at vertex {u}")
        if (min(u, v), max(u, v)) in seen:
            raise ParseError(f"line {no}: duplicate edge ({u}, {v})")
        seen.add((min(u, v), max(u, v)))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")


def parse_graph6(text: str) -> Graph:
    """Decode the first graph6 line of ``text`` (standard 6-bit encoding)."""
    line = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    if not line:
        raise ParseError("line 1: empty graph6 input")
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    data = [ord(c) - 63 for c in line]
    if any(not 0 <= v <= 63 for v in data):
        raise ParseError("line 1: invalid graph6 character")
    if not data:
        raise ParseError("line 1: empty graph6 payload")
    if data[0] < 63:
        n, body = data[0], data[1:]
    elif len(data) >= 2 and data[1] < 63:
        if len(data) < 4:
            raise ParseError("line 1: truncated graph6 vertex count")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        if len(data) < 8:
            raise ParseError("line 1: truncated graph6 vertex count")
        n = 0
        for v in data[2:8]:
            n = (n << 6) | v
        body = data[8:]
    if n < 1:
        raise ParseError("line 1: graph6 vertex count must be positive")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise ParseError("line 1: graph6 edge data has wrong length")
    bitstream = 0
    for v in body:
        bitstream = (bitstream << 6) | v
    pad = 6 * len(body) - nbits
    if pad and bitstream & ((1 << pad) - 1):
        raise ParseError("line 1: graph6 padding bits must be zero")
    bitstream >>= pad
    rows = [0] * n
    pos = nbits
    for v in range(1, n):
        for u in range(v):
            pos -= 1
            if bitstream >> pos & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def read_graph6(path: str | Path) -> Graph:
    return parse_graph6(Path(path).read_text(encoding="utf-8"))
