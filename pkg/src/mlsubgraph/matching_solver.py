"""Two-layer perfectly-matchable-subgraph solver via maximum-weight matching.

The reduction doubles the vertex set: copy i of vertex v lives in layer i's
half, an edge joins the two copies of each vertex with weight n, and each
layer edge joins same-half copies with weight n+1. The auxiliary graph always
has the all-copies perfect matching of weight n^2, and an optimal matching has
weight exactly n^2 + s where s is the largest common perfectly-matchable set
size, so one matching computation answers the query for every k at once.
"""

from __future__ import annotations

import itertools

from .graphs import MultiLayerGraph, SimpleGraph, VertexSet, induced_simple
from .instance import Answer, Instance
from .matching_engine import WeightedGraph, max_weight_matching, maximum_matching
from .properties import PropertySpec, UnsupportedPropertyError, check


def build_matching_reduction(G1: SimpleGraph, G2: SimpleGraph) -> WeightedGraph:
    """Auxiliary weighted graph for the two-layer matching reduction.

    Copy 1 of vertex v is v, copy 2 is v + n. The decision threshold for a
    query k is n^2 + k.
    """
    if G1.n != G2.n:
        raise ValueError("both layers must share the vertex count")
    n = G1.n
    edges: list[tuple[int, int, int]] = []
    for v in range(1, n + 1):
        edges.append((v, v + n, n))
    for u, v in G1.edges():
        edges.append((u, v, n + 1))
    for u, v in G2.edges():
        edges.append((u + n, v + n, n + 1))
    return WeightedGraph.from_weighted_edges(2 * n, edges)


def matching_threshold(n: int, k: int) -> int:
    return n * n + k


def two_layer_max_matchable(G1: SimpleGraph, G2: SimpleGraph) -> tuple[int, VertexSet]:
    """Largest X (with one witness) inducing perfect matchings in both layers.

    The empty set always qualifies, so the result size is >= 0.
    """
    n = G1.n
    if n == 0:
        return 0, ()
    aux = build_matching_reduction(G1, G2)
    weight, matching = max_weight_matching(aux)
    assert weight >= n * n, "the all-copies matching was missed"
    self_matched = {u for u, v in matching if v == u + n}
    X = tuple(v for v in range(1, n + 1) if v not in self_matched)
    assert len(X) == weight - n * n, "witness size disagrees with the weight"
    for g in (G1, G2):
        sub, _ = induced_simple(g, X)
        if not check(sub, PropertySpec("matching")):
            raise AssertionError("extracted witness fails a layer's matching check")
    return weight - n * n, X


def two_layer_matching_solve(G1: SimpleGraph, G2: SimpleGraph, k: int) -> Answer:
    """Decide whether some X with |X| >= k induces perfect matchings in both layers."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    best, X = two_layer_max_matchable(G1, G2)
    if best < k:
        return Answer.no()
    G = MultiLayerGraph.from_layers([G1, G2])
    inst = Instance(G, PropertySpec("matching"), k, 2)
    return Answer.yes(inst, X, (1, 2))


def _single_layer_max_matchable(g: SimpleGraph) -> tuple[int, VertexSet]:
    """Largest X inducing a perfect matching in one layer: both endpoints of a
    maximum matching."""
    mate = maximum_matching(g)
    X = tuple(sorted(v for pair in mate for v in pair))
    return len(X), X


def per_layer_solve(inst: Instance) -> Answer:
    """ell = 1 shortcut for the matching and c-factor properties.

    One qualifying layer suffices, so each layer is searched on its own: a
    maximum matching answers the matching case in polynomial time; the
    c-factor case scans subsets per layer at desk scale.
    """
    if inst.ell != 1:
        raise UnsupportedPropertyError("per-layer shortcut requires ell = 1")
    if inst.pi.kind not in ("matching", "c-factor"):
        raise UnsupportedPropertyError(
            "per-layer shortcut covers matching and c-factor only"
        )
    G = inst.graph
    if inst.pi.kind == "matching":
        for i in range(1, G.t + 1):
            size, X = _single_layer_max_matchable(G.layers[i - 1])
            if size >= inst.k:
                return Answer.yes(inst, X, (i,))
        return Answer.no()
    for size in range(G.n, inst.k - 1, -1):
        for X in itertools.combinations(range(1, G.n + 1), size):
            for i in range(1, G.t + 1):
                sub, _ = induced_simple(G.layers[i - 1], X)
                if check(sub, inst.pi):
                    return Answer.yes(inst, X, (i,))
    return Answer.no()


def matching_ml_solve(inst: Instance) -> Answer:
    """Matching-property solver for ell <= 2.

    ell = 1 reduces to a per-layer maximum matching; ell = 2 applies the
    two-layer reduction to every layer pair. Larger ell is out of this
    solver's reach (use the brute-force oracle).
    """
    if inst.pi.kind != "matching":
        raise UnsupportedPropertyError("matching solver requires the matching property")
    G = inst.graph
    if inst.ell == 1:
        return per_layer_solve(inst)
    if inst.ell == 2:
        for L in itertools.combinations(range(1, G.t + 1), 2):
            g1, g2 = G.layers[L[0] - 1], G.layers[L[1] - 1]
            best, X = two_layer_max_matchable(g1, g2)
            if best >= inst.k:
                return Answer.yes(inst, X, L)
        return Answer.no()
    raise UnsupportedPropertyError(
        "matching algorithm requires exactly 2 selected layers"
    )
