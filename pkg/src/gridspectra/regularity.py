"""Co-edge-regularity profiles and local-graph valency identities."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameterError, PreconditionError, ResourceLimitError
from .graphs import ExtensionParams, Graph, complement, local_graph
from .lines import max_clique_order


@dataclass(frozen=True)
class RegularityProfile:
    """Constant valency / co-neighbor counts, with None when not constant.

    A field is also None when there is no witnessing pair at all (lambda on
    an empty graph, mu on a complete one): no constant was observed.
    """

    n: int
    k: int | None
    lam: int | None
    mu: int | None

    @property
    def is_strongly_regular(self) -> bool:
        if self.k is None or self.lam is None or self.mu is None:
            return False
        return 0 < self.k < self.n - 1

    @property
    def srg_params(self) -> tuple[int, int, int, int] | None:
        if not self.is_strongly_regular:
            return None
        return (self.n, self.k, self.lam, self.mu)


@dataclass(frozen=True)
class LocalValencyStats:
    """Valency statistics of the local graph at one vertex.

    The three booleans report whether the sum, the sum of squares, and the
    square sum centered at st+s-2 equal their closed forms for an s-clique
    extended (t+1) x (t+1) grid.
    """

    vertex: int
    degrees: tuple[int, ...]
    degree_sum: int
    square_sum: int
    centered_square_sum: int
    sum_ok: bool
    square_sum_ok: bool
    centered_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.sum_ok and self.square_sum_ok and self.centered_ok


@dataclass(frozen=True)
class HoffmanCliqueCheck:
    """Clique-order bound and its equality case.

    outside_counts_ok is None unless the clique meets the bound st+s exactly,
    in which case it reports whether every outside vertex has exactly s
    neighbors in the clique.
    """

    order: int
    order_ok: bool
    equality_case: bool
    outside_counts_ok: bool | None


def common_neighbors(g: Graph, x: int, y: int) -> int:
    g._check_vertex(x)
    g._check_vertex(y)
    if x == y:
        raise InvalidParameterError("common_neighbors needs two distinct vertices")
    return (g.rows[x] & g.rows[y]).bit_count()


def regularity_profile(g: Graph) -> RegularityProfile:
    """Scan all pairs for constant valency, lambda and mu."""
    degrees = {g.degree(v) for v in range(g.n)}
    k = degrees.pop() if len(degrees) == 1 else None
    lam: int | None = None
    mu: int | None = None
    lam_constant = True
    mu_constant = True
    for x in range(g.n):
        for y in range(x + 1, g.n):
            c = (g.rows[x] & g.rows[y]).bit_count()
            if g.rows[x] >> y & 1:
                if lam is None:
                    lam = c
                elif c != lam:
                    lam_constant = False
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    mu_constant = False
    if not lam_constant:
        lam = None
    if not mu_constant:
        mu = None
    if k is None:
        # co-edge-regularity presumes regularity
        mu = None
    return RegularityProfile(g.n, k, lam, mu)


def local_valency_stats(g: Graph, v: int, params: ExtensionParams) -> LocalValencyStats:
    """Valency sums in the local graph at v against their closed forms."""
    s, t = params.s, params.t
    k = s * (2 * t + 1) - 1
    if g.degree(v) != k:
        raise PreconditionError(f"vertex {v} has degree {g.degree(v)}, expected valency {k}")
    sub = local_graph(g, v).graph
    degs = tuple(sub.degree(u) for u in range(sub.n))
    total = sum(degs)
    squares = sum(d * d for d in degs)
    center = s * t + s - 2
    centered = sum((d - center) ** 2 for d in degs)
    expected_sum = 2 * s * t * (s * t + 2 * s - 3) + s * s - 3 * s + 2
    expected_squares = (
        2 * s * t * (s**2 * t**2 + 4 * s**2 * t - 6 * s * t + 3 * s * s - 10 * s + 8)
        + s**3 - 5 * s**2 + 8 * s - 4
    )
    expected_centered = s * s * t * t * (s - 1)
    return LocalValencyStats(
        vertex=v,
        degrees=degs,
        degree_sum=total,
        square_sum=squares,
        centered_square_sum=centered,
        sum_ok=total == expected_sum,
        square_sum_ok=squares == expected_squares,
        centered_ok=centered == expected_centered,
    )


def hoffman_clique_check(
    g: Graph, clique: tuple[int, ...] | list[int], params: ExtensionParams
) -> HoffmanCliqueCheck:
    """Check a clique against the order bound st+s and its equality case."""
    members = sorted(set(clique))
    for v in members:
        g._check_vertex(v)
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if not g.rows[x] >> y & 1:
                raise PreconditionError(f"not a clique: vertices {x} and {y} are not adjacent")
    s, t = params.s, params.t
    bound = s * t + s
    order = len(members)
    mask = 0
    for v in members:
        mask |= 1 << v
    if order != bound:
        return HoffmanCliqueCheck(order, order <= bound, False, None)
    outside_ok = True
    for v in range(g.n):
        if mask >> v & 1:
            continue
        if (g.rows[v] & mask).bit_count() != s:
            outside_ok = False
            break
    return HoffmanCliqueCheck(order, True, True, outside_ok)


def max_coclique_order(g: Graph, limit: int = 64) -> int:
    """Exact maximum independent-set order via clique search on the complement.

    Refuses instances with more than ``limit`` vertices rather than
    approximating.
    """
    if g.n > limit:
        raise ResourceLimitError(
            f"coclique search limited to {limit} vertices, graph has {g.n}"
        )
    return max_clique_order(complement(g))
