"""Shared helpers: seeded random graphs and independent brute-force oracles.

The oracles deliberately avoid the library's search code paths: maximal
cliques are found by scanning every vertex subset, and the maximum coclique
by a subset DP, so they can vouch for the Bron-Kerbosch implementations.
"""

from __future__ import annotations

import random
from functools import lru_cache

from gridspectra.graphs import Graph, clique_extension, grid_graph


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@lru_cache(maxsize=None)
def grid_extension(s: int, t: int) -> Graph:
    return clique_extension(grid_graph(t + 1), s)


def brute_force_maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """Every vertex subset, checked for clique-ness and maximality."""
    out = []
    for mask in range(1, 1 << g.n):
        members = [v for v in range(g.n) if mask >> v & 1]
        if any((g.rows[v] & mask) != mask ^ (1 << v) for v in members):
            continue
        if any(
            (g.rows[u] & mask) == mask
            for u in range(g.n)
            if not mask >> u & 1
        ):
            continue
        out.append(tuple(members))
    out.sort()
    return out


def brute_force_max_coclique(g: Graph) -> int:
    """Exact maximum independent set by DP over vertex subsets."""
    closed = [g.rows[v] | (1 << v) for v in range(g.n)]
    memo = {0: 0}

    def best(mask: int) -> int:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length() - 1
        result = max(best(mask & ~(1 << v)), 1 + best(mask & ~closed[v]))
        memo[mask] = result
        return result

    return best((1 << g.n) - 1)


def encode_graph6(g: Graph) -> str:
    """Independent graph6 encoder for graphs with at most 62 vertices."""
    assert g.n <= 62
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if g.rows[u] >> v & 1 else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        value = 0
        for b in bits[i:i + 6]:
            value = value << 1 | b
        chars.append(chr(value + 63))
    return "".join(chars)
