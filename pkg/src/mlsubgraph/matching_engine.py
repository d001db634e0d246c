"""Exact matching primitives: max-weight matching, perfect matchings, c-factors.

The weighted engine delegates to networkx's blossom implementation, which is
exact for integer weights; all weights in this package are non-negative ints,
so no floating point enters any threshold comparison. Perfect-matching
existence on small graphs uses a memoized bitmask search, which is much
faster than the general engine inside brute-force inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from .graphs import Edge, SimpleGraph, _normalize_edge

Matching = frozenset[Edge]

_BITMASK_LIMIT = 22  # beyond this, fall back to the polynomial engine


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph on vertices 1..m with non-negative integer edge weights."""

    m: int
    weights: tuple[tuple[int, int, int], ...]  # (u, v, w) with u < v, no dups

    @staticmethod
    def from_weighted_edges(m: int, edges) -> WeightedGraph:
        seen: set[Edge] = set()
        rows: list[tuple[int, int, int]] = []
        for u, v, w in edges:
            if not (1 <= u <= m and 1 <= v <= m):
                raise ValueError(f"edge ({u}, {v}) out of vertex range 1..{m}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if w < 0 or int(w) != w:
                raise ValueError(f"weight {w!r} is not a non-negative integer")
            e = _normalize_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            rows.append((e[0], e[1], int(w)))
        return WeightedGraph(m, tuple(sorted(rows)))


def max_weight_matching(g: WeightedGraph) -> tuple[int, Matching]:
    """Exact maximum-weight matching (not necessarily perfect).

    Returns the optimal total weight and one matching achieving it.
    """
    G = nx.Graph()
    G.add_nodes_from(range(1, g.m + 1))
    for u, v, w in g.weights:
        G.add_edge(u, v, weight=w)
    mate = nx.max_weight_matching(G, maxcardinality=False)
    pairs = frozenset(_normalize_edge(u, v) for u, v in mate)
    lookup = {(u, v): w for u, v, w in g.weights}
    total = sum(lookup[e] for e in pairs)
    return total, pairs


def matching_weight(g: WeightedGraph, matching: Matching) -> int:
    lookup = {(u, v): w for u, v, w in g.weights}
    return sum(lookup[_normalize_edge(u, v)] for u, v in matching)


def is_valid_matching(g: WeightedGraph, matching: Matching) -> bool:
    present = {(u, v) for u, v, _ in g.weights}
    used: set[int] = set()
    for u, v in matching:
        if _normalize_edge(u, v) not in present:
            return False
        if u in used or v in used:
            return False
        used.update((u, v))
    return True


def _has_pm_bitmask(masks: list[int], full: int) -> bool:
    @lru_cache(maxsize=None)
    def solve(remaining: int) -> bool:
        if remaining == 0:
            return True
        low = remaining & -remaining
        v = low.bit_length()  # 1-indexed vertex of the lowest remaining bit
        partners = masks[v] & remaining
        while partners:
            pbit = partners & -partners
            if solve(remaining & ~(low | pbit)):
                return True
            partners &= partners - 1
        return False

    result = solve(full)
    solve.cache_clear()
    return result


def has_perfect_matching(g: SimpleGraph) -> bool:
    """True iff g has a perfect matching; the empty graph counts vacuously."""
    if g.n == 0:
        return True
    if g.n % 2 == 1:
        return False
    if any(not g.adj[v] for v in g.vertices()):
        return False
    if g.n <= _BITMASK_LIMIT:
        return _has_pm_bitmask(g.adjacency_masks(), (1 << g.n) - 1)
    G = nx.Graph()
    G.add_nodes_from(g.vertices())
    G.add_edges_from(g.edges())
    return 2 * len(nx.max_weight_matching(G, maxcardinality=True)) == g.n


def maximum_matching(g: SimpleGraph) -> Matching:
    """One maximum-cardinality matching of g."""
    if g.n == 0 or g.edge_count() == 0:
        return frozenset()
    G = nx.Graph()
    G.add_nodes_from(g.vertices())
    G.add_edges_from(g.edges())
    mate = nx.max_weight_matching(G, maxcardinality=True)
    return frozenset(_normalize_edge(u, v) for u, v in mate)


def maximum_matching_size(g: SimpleGraph) -> int:
    """Number of edges in a maximum-cardinality matching."""
    return len(maximum_matching(g))


def c_factor_gadget(g: SimpleGraph, c: int) -> SimpleGraph:
    """Vertex-splitting expansion whose perfect matchings encode c-factors of g.

    Each edge e = {u, v} becomes a pair of end vertices joined by an edge; each
    original vertex v contributes deg(v) - c core vertices adjacent to all end
    vertices at v. A perfect matching leaves exactly c end vertices per original
    vertex matched across their edge pair, selecting a c-regular spanning
    subgraph. Requires min degree >= c.
    """
    edges = g.edges()
    end_id: dict[tuple[int, int], int] = {}
    next_id = 1
    for u, v in edges:
        end_id[(u, v)] = next_id  # end at u
        end_id[(v, u)] = next_id + 1  # end at v
        next_id += 2
    gadget_edges: list[Edge] = []
    for u, v in edges:
        gadget_edges.append((end_id[(u, v)], end_id[(v, u)]))
    for v in g.vertices():
        spares = g.degree(v) - c
        if spares < 0:
            raise ValueError(f"vertex {v} has degree below {c}")
        ends_at_v = [end_id[(v, u)] for u in g.adj[v]]
        for _ in range(spares):
            core = next_id
            next_id += 1
            for e in ends_at_v:
                gadget_edges.append((core, e))
    return SimpleGraph.from_edges(next_id - 1, gadget_edges)


def has_c_factor(g: SimpleGraph, c: int) -> bool:
    """True iff g has a spanning c-regular subgraph (a perfect matching for c=1)."""
    if c < 1:
        raise ValueError(f"c must be positive, got {c}")
    if g.n == 0:
        return True
    if (c * g.n) % 2 == 1:
        return False
    if any(g.degree(v) < c for v in g.vertices()):
        return False
    if c == 1:
        return has_perfect_matching(g)
    return has_perfect_matching(c_factor_gadget(g, c))
