"""Multi-layer graph data model and the .mlg text format.

Vertices are integers 1..n and layers are integers 1..t in every external
format. All graph values are immutable after construction; operations that
"modify" a graph return a new value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

VertexSet = tuple[int, ...]  # sorted, duplicate-free vertex ids
Edge = tuple[int, int]  # normalized with u < v


class MlgParseError(ValueError):
    """Raised on malformed .mlg input; message carries the line number."""


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices 1..n with sorted adjacency lists."""

    n: int
    adj: tuple[tuple[int, ...], ...]  # adj[0] unused; adj[v] sorted neighbors of v

    @staticmethod
    def from_edges(n: int, edges: Iterable[Edge]) -> SimpleGraph:
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n + 1)]
        seen: set[Edge] = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) out of vertex range 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = _normalize_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return SimpleGraph(n, tuple(tuple(sorted(s)) for s in nbrs))

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(1, self.n + 1) for v in self.adj[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(self.adj[v]) for v in range(1, self.n + 1)) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacency_masks(self) -> list[int]:
        """Bitmask adjacency (bit v-1 set for neighbor v); index 0 unused."""
        masks = [0] * (self.n + 1)
        for v in range(1, self.n + 1):
            m = 0
            for u in self.adj[v]:
                m |= 1 << (u - 1)
            masks[v] = m
        return masks


@dataclass(frozen=True)
class MultiLayerGraph:
    """t simple graphs (layers) sharing the vertex set 1..n."""

    n: int
    t: int
    layers: tuple[SimpleGraph, ...]  # layers[i-1] is layer i

    @staticmethod
    def from_layers(layers: Iterable[SimpleGraph]) -> MultiLayerGraph:
        layer_tuple = tuple(layers)
        if not layer_tuple:
            raise ValueError("a multi-layer graph needs at least one layer")
        n = layer_tuple[0].n
        for g in layer_tuple:
            if g.n != n:
                raise ValueError("all layers must share the same vertex count")
        return MultiLayerGraph(n, len(layer_tuple), layer_tuple)

    @staticmethod
    def from_layer_edges(n: int, t: int, edges: Iterable[tuple[int, int, int]]) -> MultiLayerGraph:
        """Build from (layer, u, v) triples."""
        if t < 1:
            raise ValueError(f"layer count must be at least 1, got {t}")
        per_layer: list[list[Edge]] = [[] for _ in range(t)]
        for layer, u, v in edges:
            if not 1 <= layer <= t:
                raise ValueError(f"layer {layer} out of range 1..{t}")
            per_layer[layer - 1].append((u, v))
        return MultiLayerGraph.from_layers(SimpleGraph.from_edges(n, es) for es in per_layer)

    def layer(self, i: int) -> SimpleGraph:
        if not 1 <= i <= self.t:
            raise ValueError(f"layer {i} out of range 1..{self.t}")
        return self.layers[i - 1]

    def iter_layer_edges(self) -> Iterator[tuple[int, int, int]]:
        for i, g in enumerate(self.layers, start=1):
            for u, v in g.edges():
                yield (i, u, v)


def parse_mlg(text: str | bytes) -> MultiLayerGraph:
    """Parse the .mlg format.

    Grammar (UTF-8, LF line endings):
        c <text>          comment, ignored
        p mlg <n> <t>     exactly one, before any edge line
        e <layer> <u> <v> one edge

    Malformed input raises MlgParseError with the offending line number.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = t = -1
    header_seen = False
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tag = line.split(None, 1)[0]
        if tag == "c":
            continue
        if tag == "p":
            if header_seen:
                raise MlgParseError(f"line {lineno}: duplicate header line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "mlg":
                raise MlgParseError(f"line {lineno}: malformed header, expected 'p mlg <n> <t>'")
            try:
                n, t = int(parts[2]), int(parts[3])
            except ValueError:
                raise MlgParseError(f"line {lineno}: non-integer header fields") from None
            if n < 0:
                raise MlgParseError(f"line {lineno}: vertex count must be non-negative")
            if t < 1:
                raise MlgParseError(f"line {lineno}: layer count must be at least 1")
            header_seen = True
        elif tag == "e":
            if not header_seen:
                raise MlgParseError(f"line {lineno}: edge before header")
            parts = line.split()
            if len(parts) != 4:
                raise MlgParseError(f"line {lineno}: malformed edge, expected 'e <layer> <u> <v>'")
            try:
                layer, u, v = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise MlgParseError(f"line {lineno}: non-integer edge fields") from None
            if not 1 <= layer <= t:
                raise MlgParseError(f"line {lineno}: layer index {layer} out of range 1..{t}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise MlgParseError(f"line {lineno}: vertex index out of range 1..{n}")
            if u == v:
                raise MlgParseError(f"line {lineno}: self-loop at vertex {u}")
            a, b = _normalize_edge(u, v)
            if (layer, a, b) in seen:
                raise MlgParseError(f"line {lineno}: duplicate edge ({a}, {b}) in layer {layer}")
            seen.add((layer, a, b))
            edges.append((layer, a, b))
        else:
            raise MlgParseError(f"line {lineno}: unknown line tag {tag!r}")
    if not header_seen:
        raise MlgParseError("line 1: missing 'p mlg <n> <t>' header")
    return MultiLayerGraph.from_layer_edges(n, t, edges)


def serialize_mlg(G: MultiLayerGraph) -> str:
    """Canonical .mlg text: header, then edges sorted by (layer, u, v), u < v."""
    lines = [f"p mlg {G.n} {G.t}"]
    for layer, u, v in sorted(G.iter_layer_edges()):
        lines.append(f"e {layer} {u} {v}")
    return "\n".join(lines) + "\n"


def induced_simple(g: SimpleGraph, X: Iterable[int]) -> tuple[SimpleGraph, dict[int, int]]:
    """Induced subgraph on X, relabeled 1..|X| preserving vertex order."""
    members = sorted(set(X))
    for v in members:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} out of range 1..{g.n}")
    relabel = {v: i for i, v in enumerate(members, start=1)}
    inside = set(members)
    edges = [
        (relabel[u], relabel[v])
        for u in members
        for v in g.adj[u]
        if u < v and v in inside
    ]
    return SimpleGraph.from_edges(len(members), edges), relabel


def induced(G: MultiLayerGraph, X: Iterable[int]) -> tuple[MultiLayerGraph, dict[int, int]]:
    """Induced multi-layer subgraph on X; returns the graph and the old->new map."""
    members = sorted(set(X))
    for v in members:
        if not 1 <= v <= G.n:
            raise ValueError(f"vertex {v} out of range 1..{G.n}")
    relabel = {v: i for i, v in enumerate(members, start=1)}
    new_layers = []
    for g in G.layers:
        sub, _ = induced_simple(g, members)
        new_layers.append(sub)
    # A 0-vertex multi-layer graph is legal; from_layers handles it.
    return MultiLayerGraph(len(members), G.t, tuple(new_layers)), relabel


def restrict_layers(G: MultiLayerGraph, L: Iterable[int]) -> MultiLayerGraph:
    """Keep only layers in L, renumbered 1..|L| in ascending original order."""
    chosen = sorted(set(L))
    if not chosen:
        raise ValueError("layer selection must be nonempty")
    for i in chosen:
        if not 1 <= i <= G.t:
            raise ValueError(f"layer {i} out of range 1..{G.t}")
    return MultiLayerGraph(G.n, len(chosen), tuple(G.layers[i - 1] for i in chosen))


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def edgeless_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [])


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star_graph(leaves: int) -> SimpleGraph:
    """K_{1,leaves} with the hub as vertex 1."""
    return SimpleGraph.from_edges(leaves + 1, [(1, i) for i in range(2, leaves + 2)])
