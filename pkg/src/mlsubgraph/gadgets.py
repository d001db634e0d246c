"""Constructive reductions used as labeled instance generators.

Each builder turns a source graph (clique / biclique search) into a
multi-layer instance whose answer provably mirrors the source question; the
test suite validates the mirror empirically against the brute-force referee.
All constructions use one fixed vertex layout shared by every layer.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .graphs import (
    Edge,
    MultiLayerGraph,
    SimpleGraph,
    VertexSet,
    complete_graph,
    edgeless_graph,
)
from .instance import Instance
from .properties import PropertySpec

_GADGET_KINDS = ("connectivity", "tree", "star", "c-core", "c-truss", "matching", "c-factor")


@dataclass(frozen=True)
class ColoredGraph:
    """Vertex-colored source graph; colors partition the vertices.

    For biclique sources low_colors is set: colors 1..low_colors are the low
    side, the rest the high side, and edges may only cross sides.
    """

    base: SimpleGraph
    colors: tuple[int, ...]  # colors[v-1] is the color of vertex v
    low_colors: int | None = None
    planted: VertexSet | None = None

    def __post_init__(self):
        if len(self.colors) != self.base.n:
            raise ValueError("every vertex needs a color")
        if self.base.n and min(self.colors) < 1:
            raise ValueError("colors are positive integers")
        for u, v in self.base.edges():
            cu, cv = self.colors[u - 1], self.colors[v - 1]
            if cu == cv:
                raise ValueError(f"edge ({u}, {v}) inside color class {cu}")
            if self.low_colors is not None:
                if (cu <= self.low_colors) == (cv <= self.low_colors):
                    raise ValueError(f"edge ({u}, {v}) does not cross the bipartition")

    @property
    def num_colors(self) -> int:
        return max(self.colors, default=0)

    def color_class(self, j: int) -> VertexSet:
        return tuple(v for v in self.base.vertices() if self.colors[v - 1] == j)


@dataclass(frozen=True)
class GadgetOutput:
    graph: SimpleGraph
    blocks: dict[int, VertexSet]
    anchor: VertexSet
    block_size: int
    anchor_size: int

    def __post_init__(self):
        covered: list[int] = list(self.anchor)
        for block in self.blocks.values():
            if len(block) != self.block_size:
                raise ValueError("blocks must share one size")
            covered.extend(block)
        if sorted(covered) != list(self.graph.vertices()):
            raise ValueError("blocks plus anchor must partition the vertex set")
        if len(self.anchor) != self.anchor_size:
            raise ValueError("anchor size mismatch")


def gadget_sizes(kind: PropertySpec) -> tuple[int, int]:
    """Realized block size f and anchor size f' for a gadget property."""
    k = kind.kind
    if k in ("connectivity", "tree", "star"):
        return 1, 1
    if k == "c-core":
        return 1, kind.c
    if k == "c-truss":
        return 1, kind.c + 1
    if k == "matching":
        return 2, 0
    if k == "c-factor":
        return kind.c + 1, 0
    raise ValueError(f"no gadget for property kind {k!r}")


def build_property_gadget(
    W: list[int], Wprime, alpha: int, kind: PropertySpec
) -> GadgetOutput:
    """One selection layer of the generic hardness construction.

    Every source vertex in W owns a block of f vertices; an anchor of f'
    vertices is shared. Exactly the blocks of Wprime members are wired so that
    large property-inducing sets are unions of Wprime blocks plus the anchor.
    """
    if kind.kind not in _GADGET_KINDS:
        raise ValueError(f"no gadget for property kind {kind.kind!r}")
    wprime = set(Wprime)
    if not wprime <= set(W):
        raise ValueError("Wprime must be a subset of W")
    f, f_prime = gadget_sizes(kind)
    m = len(W)
    blocks = {
        source: tuple(range(idx * f + 1, idx * f + f + 1))
        for idx, source in enumerate(W)
    }
    anchor = tuple(range(m * f + 1, m * f + f_prime + 1))
    edges: list[Edge] = []
    k = kind.kind
    if k in ("connectivity", "tree", "star") or (k == "c-core" and kind.c == 1):
        hub = anchor[0]
        edges = [(blocks[v][0], hub) for v in W if v in wprime]
    elif k == "c-core":
        edges = [
            (blocks[v][0], u) for v in W if v in wprime for u in anchor
        ]
    elif k == "c-truss":
        edges = [(u, v) for u, v in itertools.combinations(anchor, 2)]
        edges += [(blocks[v][0], u) for v in W if v in wprime for u in anchor]
    elif k == "matching":
        edges = [(blocks[v][0], blocks[v][1]) for v in W if v in wprime]
    else:  # c-factor
        for v in W:
            if v in wprime:
                edges += list(itertools.combinations(blocks[v], 2))
    graph = SimpleGraph.from_edges(m * f + f_prime, edges)
    return GadgetOutput(graph, blocks, anchor, f, f_prime)


def biclique_to_piml(H: SimpleGraph, h: int, kind: PropertySpec) -> Instance:
    """Biclique-search reduction: one gadget layer per source vertex.

    Layer v wires the blocks of v's neighborhood; a common solution across h
    layers forces h source vertices adjacent to h others, a K_{h,h}.
    """
    if h < 2:
        raise ValueError(f"the biclique reduction needs h >= 2, got {h}")
    if H.n < h:
        raise ValueError("source graph needs at least h vertices")
    W = list(H.vertices())
    f, f_prime = gadget_sizes(kind)
    layers = [
        build_property_gadget(W, H.adj[v], h, kind).graph for v in W
    ]
    return Instance(
        MultiLayerGraph.from_layers(layers),
        kind,
        k=h * f + f_prime,
        ell=h,
    )


# ---------------------------------------------------------------------------
# multicolored-clique reductions


def _require_h_partite(H: ColoredGraph, h: int) -> None:
    if H.low_colors is not None:
        raise ValueError("expected a clique source, not a biclique source")
    if H.num_colors != h:
        raise ValueError(f"source must use exactly {h} colors")
    for j in range(1, h + 1):
        if not H.color_class(j):
            raise ValueError(f"color class {j} is empty")


def _clique_block_ids(H: ColoredGraph, h: int):
    """Block vertex ids: source vertex s, missing-color slot j' -> output id."""
    ids: dict[tuple[int, int], int] = {}
    for s in H.base.vertices():
        own = H.colors[s - 1]
        others = [j for j in range(1, h + 1) if j != own]
        base = (s - 1) * (h - 1)
        for z, j in enumerate(others, start=1):
            ids[(s, j)] = base + z
    return ids


def mcc_to_matching(H: ColoredGraph, h: int) -> Instance:
    """Multicolored clique -> perfectly matchable subgraph in 3 layers.

    Layers 1 and 2 hold, per source vertex, one even cycle through its block
    and its color vertex, edges alternating between the two layers; layer 3
    holds one edge per source edge plus a pairing of the color vertices.
    Opposite-color copies of adjacent source vertices meet in layer 3, so a
    size h*h solution spells out a clique with one vertex per color.
    """
    if h < 2 or h % 2 == 1:
        raise ValueError(f"construction needs an even h >= 2, got {h}")
    _require_h_partite(H, h)
    N = H.base.n
    block = _clique_block_ids(H, h)
    w_id = {j: N * (h - 1) + j for j in range(1, h + 1)}
    total = N * (h - 1) + h
    layer_edges: dict[int, list[Edge]] = {1: [], 2: [], 3: []}
    for s in H.base.vertices():
        own = H.colors[s - 1]
        path = [block[(s, j)] for j in range(1, h + 1) if j != own]
        w = w_id[own]
        layer_edges[2].append((w, path[0]))
        for p in range(1, h - 1):
            layer_edges[1 if p % 2 == 1 else 2].append((path[p - 1], path[p]))
        layer_edges[1].append((path[-1], w))
    for a, b in H.base.edges():
        ca, cb = H.colors[a - 1], H.colors[b - 1]
        layer_edges[3].append((block[(a, cb)], block[(b, ca)]))
    for j in range(1, h // 2 + 1):
        layer_edges[3].append((w_id[j], w_id[j + h // 2]))
    G = MultiLayerGraph.from_layers(
        SimpleGraph.from_edges(total, layer_edges[i]) for i in (1, 2, 3)
    )
    return Instance(G, PropertySpec("matching"), k=h * h, ell=3)


def _circulant_edges(order: list[int], c: int) -> list[Edge]:
    """Connected c-regular graph on the given vertices: each joins the floor(c/2)
    next positions cyclically, plus the opposite position when c is odd."""
    n = len(order)
    pairs: set[Edge] = set()
    for x in range(n):
        for step in range(1, c // 2 + 1):
            a, b = order[x], order[(x + step) % n]
            pairs.add((a, b) if a < b else (b, a))
        if c % 2 == 1:
            a, b = order[x], order[(x + n // 2) % n]
            pairs.add((a, b) if a < b else (b, a))
    return sorted(pairs)


def mcc_to_cfactor(H: ColoredGraph, h: int, c: int) -> Instance:
    """Multicolored clique -> c-factor subgraph in 2 layers.

    Layer 1 carries one connected c-regular gadget per source vertex (its
    block plus its color vertex) and a clique on all edge blocks; layer 2
    carries a (c+1)-clique per source edge joining its block to the two
    opposite-color copies, plus a clique on the color vertices.
    """
    if c < 2:
        raise ValueError(f"construction needs c >= 2, got {c}")
    if h < c + 1 or (c * h) % 2 == 1:
        raise ValueError("construction needs h >= c+1 and c*h even")
    _require_h_partite(H, h)
    N = H.base.n
    block = _clique_block_ids(H, h)
    w_id = {j: N * (h - 1) + j for j in range(1, h + 1)}
    source_edges = sorted(H.base.edges())
    base_f = N * (h - 1) + h
    edge_block = {
        e: tuple(base_f + idx * (c - 1) + z for z in range(1, c))
        for idx, e in enumerate(source_edges)
    }
    total = base_f + len(source_edges) * (c - 1)
    all_vf = [v for e in source_edges for v in edge_block[e]]
    g1: list[Edge] = []
    for s in H.base.vertices():
        own = H.colors[s - 1]
        order = [block[(s, j)] for j in range(1, h + 1) if j != own] + [w_id[own]]
        g1 += _circulant_edges(order, c)
    g1 += list(itertools.combinations(all_vf, 2))
    g2: list[Edge] = []
    for a, b in source_edges:
        ca, cb = H.colors[a - 1], H.colors[b - 1]
        members = list(edge_block[(a, b)]) + [block[(a, cb)], block[(b, ca)]]
        g2 += list(itertools.combinations(sorted(members), 2))
    g2 += list(itertools.combinations(sorted(w_id.values()), 2))
    G = MultiLayerGraph.from_layers(
        [SimpleGraph.from_edges(total, g1), SimpleGraph.from_edges(total, g2)]
    )
    k = h * h + h * (h - 1) * (c - 1) // 2
    return Instance(G, PropertySpec("c-factor", c=c), k=k, ell=2)


# ---------------------------------------------------------------------------
# multicolored-biclique reduction


def _require_biclique_source(H: ColoredGraph, h: int) -> None:
    if H.low_colors != h or H.num_colors != 2 * h:
        raise ValueError(f"source must have {h} low and {h} high colors")
    for j in range(1, 2 * h + 1):
        if not H.color_class(j):
            raise ValueError(f"color class {j} is empty")


@dataclass(frozen=True)
class _HamLayout:
    """Vertex numbering and levelings of the Hamiltonian construction."""

    s1: int
    s2: int
    asc: dict[Edge, int]  # source edge (u, w) -> ascending vertex id
    desc: dict[Edge, int]  # source edge (u, w) -> descending vertex id
    total: int
    selection_levels: list[VertexSet]
    validation_levels: list[VertexSet]


def _ham_layout(H: ColoredGraph, h: int) -> _HamLayout:
    N = H.base.n
    s1, s2 = N + 1, N + 2
    source_edges = sorted(
        (u, w) if H.colors[u - 1] <= h else (w, u) for u, w in H.base.edges()
    )
    asc = {e: N + 2 + idx + 1 for idx, e in enumerate(source_edges)}
    desc = {e: N + 2 + len(source_edges) + idx + 1 for idx, e in enumerate(source_edges)}
    total = N + 2 + 2 * len(source_edges)

    def low_color(u: int) -> int:
        return H.colors[u - 1]

    def high_color(w: int) -> int:
        return H.colors[w - 1] - h

    def A(i: int, j: int) -> VertexSet:
        return tuple(
            asc[e] for e in source_edges if low_color(e[0]) == i and high_color(e[1]) == j
        )

    def D(j: int, i: int) -> VertexSet:
        return tuple(
            desc[e] for e in source_edges if high_color(e[1]) == j and low_color(e[0]) == i
        )

    selection: list[VertexSet] = []
    for i in range(1, h + 1):
        selection.append(H.color_class(i))
        for j in range(1, h + 1):
            selection.append(A(i, j))
    selection.append((s1,))
    selection.append((s2,))
    for j in range(1, h + 1):
        selection.append(H.color_class(h + j))
        for i in range(1, h + 1):
            selection.append(D(j, i))

    validation: list[VertexSet] = [(s1,)]
    for i in range(1, h + 1):
        for j in range(1, h + 1):
            validation.append(A(i, j))
            validation.append(D(j, i))
    validation.append((s2,))
    for i in range(1, h + 1):
        validation.append(H.color_class(i))
    for j in range(1, h + 1):
        validation.append(H.color_class(h + j))

    return _HamLayout(s1, s2, asc, desc, total, selection, validation)


def mcb_to_hamiltonian(H: ColoredGraph, h: int) -> Instance:
    """Multicolored biclique -> Hamiltonian-path subgraph in 2 layers.

    Both layers are leveled with edges only between neighboring levels; a path
    through all 2h^2 + 2h + 2 levels selects one vertex per color and one
    oriented edge per color pair, and the lone ascending/descending bridge per
    pair forces the two orientations to agree, spelling out a biclique.
    """
    _require_biclique_source(H, h)
    lay = _ham_layout(H, h)

    def low_color(u: int) -> int:
        return H.colors[u - 1]

    def high_color(w: int) -> int:
        return H.colors[w - 1] - h

    g1: list[Edge] = []
    for (u, w), a in lay.asc.items():
        if high_color(w) == 1:
            g1.append((u, a))
    for (u, w), a in lay.asc.items():
        j = high_color(w)
        if j < h:
            for (u2, w2), a2 in lay.asc.items():
                if u2 == u and high_color(w2) == j + 1:
                    g1.append((a, a2))
    for (u, w), a in lay.asc.items():
        i = low_color(u)
        if high_color(w) == h and i < h:
            for u2 in H.color_class(i + 1):
                g1.append((a, u2))
    for (u, w), a in lay.asc.items():
        if low_color(u) == h and high_color(w) == h:
            g1.append((a, lay.s1))
    g1.append((lay.s1, lay.s2))
    for w in H.color_class(h + 1):
        g1.append((lay.s2, w))
    for (u, w), d in lay.desc.items():
        if low_color(u) == 1:
            g1.append((w, d))
    for (u, w), d in lay.desc.items():
        i = low_color(u)
        if i < h:
            for (u2, w2), d2 in lay.desc.items():
                if w2 == w and low_color(u2) == i + 1:
                    g1.append((d, d2))
    for (u, w), d in lay.desc.items():
        if low_color(u) == h and high_color(w) < h:
            for w2 in H.color_class(h + high_color(w) + 1):
                g1.append((d, w2))

    g2: list[Edge] = []
    levels = lay.validation_levels
    for idx in range(len(levels) - 1):
        here, there = levels[idx], levels[idx + 1]
        # between the ascending and descending level of one color pair, only
        # the two copies of the same source edge are joined
        pair_break = idx >= 1 and idx <= 2 * h * h and idx % 2 == 1
        if pair_break:
            for e, a in lay.asc.items():
                if a in here and lay.desc[e] in there:
                    g2.append((a, lay.desc[e]))
        else:
            g2 += [(x, y) for x in here for y in there]

    G = MultiLayerGraph.from_layers(
        [
            SimpleGraph.from_edges(lay.total, set(g1)),
            SimpleGraph.from_edges(lay.total, set(g2)),
        ]
    )
    return Instance(G, PropertySpec("hamiltonian"), k=2 * h + 2 * h * h + 2, ell=2)


def hamiltonian_layout(H: ColoredGraph, h: int) -> _HamLayout:
    """Expose the leveling for structural validation."""
    _require_biclique_source(H, h)
    return _ham_layout(H, h)


# ---------------------------------------------------------------------------
# layer padding and source generation


def pad_layers(inst: Instance, new_t: int, new_ell: int) -> Instance:
    """Append complete layers to raise ell and edgeless layers to raise t.

    Only defined for instances with t == ell (every reduction output); the
    caller asserts the property holds on complete and fails on edgeless layers
    of the relevant sizes, so the decision is preserved.
    """
    if inst.graph.t != inst.ell:
        raise ValueError("padding starts from an instance with t == ell")
    if new_ell < inst.ell or new_t < new_ell:
        raise ValueError("shrinking layers is forbidden")
    layers = list(inst.graph.layers)
    layers += [complete_graph(inst.graph.n)] * (new_ell - inst.ell)
    layers += [edgeless_graph(inst.graph.n)] * (new_t - new_ell)
    return Instance(
        MultiLayerGraph.from_layers(layers), inst.pi, inst.k, new_ell
    )


def gen_colored_source(
    h: int,
    per_color: int,
    edge_prob: float,
    plant: bool,
    seed: int,
    mode: str,
) -> ColoredGraph:
    """Seeded random h-partite (clique) or 2h-partite bipartite (biclique) source.

    With plant=True a multicolored clique (one vertex per color) or biclique
    (one per color on each side) is embedded and recorded in the result.
    """
    if mode not in ("clique", "biclique"):
        raise ValueError(f"unknown source mode {mode!r}")
    if per_color < 1:
        raise ValueError("per_color must be positive")
    if not 0 <= edge_prob <= 1:
        raise ValueError("edge_prob must be within [0, 1]")
    rng = random.Random(seed)
    classes = h if mode == "clique" else 2 * h
    n = classes * per_color
    colors = tuple(1 + (v - 1) // per_color for v in range(1, n + 1))
    low = None if mode == "clique" else h

    def crosses(u: int, v: int) -> bool:
        cu, cv = colors[u - 1], colors[v - 1]
        if cu == cv:
            return False
        if mode == "biclique":
            return (cu <= h) != (cv <= h)
        return True

    # background first, picks second: the same seed yields the same background
    # with and without a plant
    edges: set[Edge] = set()
    for u, v in itertools.combinations(range(1, n + 1), 2):
        if crosses(u, v) and rng.random() < edge_prob:
            edges.add((u, v))
    planted: tuple[int, ...] | None = None
    if plant:
        planted = tuple(
            (j - 1) * per_color + 1 + rng.randrange(per_color)
            for j in range(1, classes + 1)
        )
        for u, v in itertools.combinations(planted, 2):
            if crosses(u, v):
                edges.add((u, v))
    return ColoredGraph(
        SimpleGraph.from_edges(n, sorted(edges)),
        colors,
        low_colors=low,
        planted=planted,
    )


# ---------------------------------------------------------------------------
# source-side brute force (ground truth for generated corpora)


def has_multicolored_clique(H: ColoredGraph) -> bool:
    h = H.num_colors
    classes = [H.color_class(j) for j in range(1, h + 1)]
    for combo in itertools.product(*classes):
        if all(H.base.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
            return True
    return False


def has_multicolored_biclique(H: ColoredGraph) -> bool:
    h = H.low_colors
    if h is None:
        raise ValueError("biclique check needs a biclique source")
    lows = [H.color_class(j) for j in range(1, h + 1)]
    highs = [H.color_class(h + j) for j in range(1, h + 1)]
    for low_pick in itertools.product(*lows):
        for high_pick in itertools.product(*highs):
            if all(H.base.has_edge(u, w) for u in low_pick for w in high_pick):
                return True
    return False


def has_biclique_subgraph(g: SimpleGraph, h: int) -> bool:
    """Plain K_{h,h} subgraph test by exhausting disjoint h-subsets."""
    vertices = list(g.vertices())
    for A in itertools.combinations(vertices, h):
        rest = [v for v in vertices if v not in A]
        common = set(rest)
        for a in A:
            common &= set(g.adj[a])
        if len(common) >= h:
            return True
    return False
