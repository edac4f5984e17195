"""Maximal-clique enumeration and line-structure checks.

A line is a maximal clique with at least 3s(t+2)/4 vertices, compared
exactly as 4*|C| >= 3*s*(t+2).  Lines whose orders fall outside
[s(t-1)+1, s(t+1)] are kept but flagged so that degenerate inputs are
reported rather than silently repaired.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InvalidParameterError, PreconditionError, ResourceLimitError
from .graphs import ExtensionParams, Graph, bits

DEFAULT_CLIQUE_CAP = 10**6
CLIQUE_CAP_ENV = "GRIDSPECTRA_CLIQUE_CAP"


def _clique_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    raw = os.environ.get(CLIQUE_CAP_ENV)
    if raw is None:
        return DEFAULT_CLIQUE_CAP
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameterError(f"{CLIQUE_CAP_ENV} must be an integer, got {raw!r}") from None


def _pivot(rows: tuple[int, ...], p: int, x: int) -> int:
    best_vertex = -1
    best_count = -1
    for u in bits(p | x):
        count = (p & rows[u]).bit_count()
        if count > best_count:
            best_count = count
            best_vertex = u
    return best_vertex


def maximal_cliques(g: Graph, cap: int | None = None) -> list[tuple[int, ...]]:
    """All maximal cliques, each sorted, in lexicographic order.

    Bron-Kerbosch with pivoting; the pivot maximizes |P & N(u)| over P | X
    with ties broken toward the lowest index.  Raises when more than ``cap``
    cliques would be produced (default 10^6, overridable via the
    GRIDSPECTRA_CLIQUE_CAP environment variable).
    """
    limit = _clique_cap(cap)
    rows = g.rows
    out: list[tuple[int, ...]] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            if len(out) >= limit:
                raise ResourceLimitError(f"maximal clique output exceeded cap {limit}")
            out.append(tuple(bits(r)))
            return
        pivot = _pivot(rows, p, x)
        for v in bits(p & ~rows[pivot]):
            bit = 1 << v
            expand(r | bit, p & rows[v], x & rows[v])
            p ^= bit
            x |= bit

    expand(0, (1 << g.n) - 1, 0)
    out.sort()
    return out


def max_clique_order(g: Graph) -> int:
    """Exact maximum clique order, same search as maximal_cliques plus a
    size bound prune."""
    rows = g.rows
    best = 0

    def expand(size: int, p: int, x: int) -> None:
        nonlocal best
        if not p and not x:
            best = max(best, size)
            return
        if size + p.bit_count() <= best:
            return
        pivot = _pivot(rows, p, x)
        for v in bits(p & ~rows[pivot]):
            bit = 1 << v
            expand(size + 1, p & rows[v], x & rows[v])
            p ^= bit
            x |= bit

    expand(0, (1 << g.n) - 1, 0)
    return best


@dataclass(frozen=True)
class Line:
    vertices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class LineStructure:
    """Detected lines plus the bookkeeping the order identities need.

    q[i-1] counts lines of order s(t-1)+i for i = 1..2s; orders outside that
    window are excluded from q and listed in out_of_range.  alpha is
    delta - (2t+2) and may be negative.
    """

    lines: tuple[Line, ...]
    incidence: tuple[tuple[int, ...], ...]
    q: tuple[int, ...]
    delta: int
    alpha: int
    out_of_range: tuple[int, ...]


@dataclass(frozen=True)
class TwoLinesCheck:
    ok: bool
    offending: tuple[int, ...]


@dataclass(frozen=True)
class VertexLineProfile:
    ell: int
    m: int
    ell_plus_m_ok: bool
    order_bounds_ok: bool


@dataclass(frozen=True)
class PairOrdersCheck:
    ok: bool
    witness: str | None = None


@dataclass(frozen=True)
class OrderHistogramCheck:
    eq_main: bool
    delta_bounds: bool
    eq_alpha: bool
    # only meaningful when delta == 2t+2: all lines then have order s(t+1)
    all_lines_max_order: bool | None
    reason: str | None = None


def find_lines(g: Graph, params: ExtensionParams, cap: int | None = None) -> LineStructure:
    """Filter maximal cliques by the line threshold and build the structure."""
    s, t = params.s, params.t
    cliques = maximal_cliques(g, cap)
    chosen = [c for c in cliques if 4 * len(c) >= 3 * s * (t + 2)]
    lines = tuple(Line(c) for c in chosen)
    incidence: list[list[int]] = [[] for _ in range(g.n)]
    for idx, line in enumerate(lines):
        for v in line.vertices:
            incidence[v].append(idx)
    lo, hi = s * (t - 1) + 1, s * (t + 1)
    q = [0] * (2 * s)
    out_of_range = []
    for idx, line in enumerate(lines):
        if lo <= line.order <= hi:
            q[line.order - s * (t - 1) - 1] += 1
        else:
            out_of_range.append(idx)
    delta = len(lines)
    return LineStructure(
        lines=lines,
        incidence=tuple(tuple(entry) for entry in incidence),
        q=tuple(q),
        delta=delta,
        alpha=delta - (2 * t + 2),
        out_of_range=tuple(out_of_range),
    )


def check_two_lines_per_vertex(ls: LineStructure, n: int) -> TwoLinesCheck:
    """Every vertex of [0, n) must lie on exactly two lines."""
    counts = [0] * n
    for line in ls.lines:
        for v in line.vertices:
            if v < n:
                counts[v] += 1
    offending = tuple(v for v in range(n) if counts[v] != 2)
    return TwoLinesCheck(not offending, offending)


def check_vertex_line_profile(
    g: Graph, ls: LineStructure, v: int, params: ExtensionParams
) -> VertexLineProfile:
    """Intersection and leftover counts for the two lines through v.

    m is the intersection order of the two lines, ell the number of
    neighbors of v outside both; for a genuine extension ell + m = s.
    """
    g._check_vertex(v)
    incident = ls.incidence[v]
    if len(incident) != 2:
        raise PreconditionError(f"vertex {v} lies on {len(incident)} lines, expected 2")
    s, t = params.s, params.t
    c1, c2 = (ls.lines[i] for i in incident)
    mask1 = mask2 = 0
    for u in c1.vertices:
        mask1 |= 1 << u
    for u in c2.vertices:
        mask2 |= 1 << u
    m = (mask1 & mask2).bit_count()
    ell = (g.rows[v] & ~(mask1 | mask2)).bit_count()
    lo, hi = s * (t - 1) + 1, s * (t + 1)
    return VertexLineProfile(
        ell=ell,
        m=m,
        ell_plus_m_ok=ell + m == s,
        order_bounds_ok=lo <= c1.order <= hi and lo <= c2.order <= hi,
    )


def check_intersecting_pair_orders(ls: LineStructure, params: ExtensionParams) -> PairOrdersCheck:
    """Orders of every intersecting line pair must sum to 2st + 2m."""
    s, t = params.s, params.t
    masks = []
    for line in ls.lines:
        mask = 0
        for v in line.vertices:
            mask |= 1 << v
        masks.append(mask)
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            m = (masks[i] & masks[j]).bit_count()
            if m == 0:
                continue
            c1, c2 = ls.lines[i].order, ls.lines[j].order
            if c1 + c2 != 2 * s * t + 2 * m:
                return PairOrdersCheck(
                    False,
                    f"lines {i} and {j}: orders {c1}+{c2} != 2st+2m = {2 * s * t + 2 * m}",
                )
    return PairOrdersCheck(True)


def check_order_histogram(ls: LineStructure, params: ExtensionParams) -> OrderHistogramCheck:
    """The double-counting identity, the delta window, and the alpha identity."""
    s, t = params.s, params.t
    if ls.out_of_range:
        return OrderHistogramCheck(
            False, False, False, None,
            reason=f"{len(ls.out_of_range)} line(s) have orders outside [{s * (t - 1) + 1}, {s * (t + 1)}]",
        )
    weighted = sum((s * (t - 1) + i) * ls.q[i - 1] for i in range(1, 2 * s + 1))
    alpha_sum = sum((2 * s - i) * ls.q[i - 1] for i in range(1, 2 * s + 1))
    eq_main = weighted == 2 * s * (t + 1) ** 2
    delta_bounds = 2 * t + 2 <= ls.delta <= 2 * t + 6
    eq_alpha = alpha_sum == ls.alpha * s * (t + 1)
    forced = ls.q[2 * s - 1] == ls.delta if ls.delta == 2 * t + 2 else None
    return OrderHistogramCheck(eq_main, delta_bounds, eq_alpha, forced)


def check_line_count(ls: LineStructure, params: ExtensionParams) -> bool:
    """Exactly 2t+2 lines, every one of order s(t+1)."""
    s, t = params.s, params.t
    return ls.delta == 2 * t + 2 and all(line.order == s * (t + 1) for line in ls.lines)


def line_intersection_graph(ls: LineStructure) -> Graph:
    """Diagnostic view: lines as vertices, adjacency = nonempty intersection."""
    if not ls.lines:
        raise InvalidParameterError("line intersection graph needs at least one line")
    masks = []
    for line in ls.lines:
        mask = 0
        for v in line.vertices:
            mask |= 1 << v
        masks.append(mask)
    edges = [
        (i, j)
        for i in range(len(masks))
        for j in range(i + 1, len(masks))
        if masks[i] & masks[j]
    ]
    return Graph.from_edges(len(masks), edges)
