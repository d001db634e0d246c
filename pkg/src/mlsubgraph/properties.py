"""Graph-property membership checks and property-guided vertex partitions.

A PropertySpec names one supported property; `check` decides membership of a
single graph and `pi_refine` computes, for the partitionable properties, a
refinement that confines every property-inducing vertex set to one cell.

Conventions for degenerate graphs (a fixed choice, applied consistently by
every solver in this package):

  n = 0: true for matching, c-factor, c-core, c-truss, c-edge-connectivity,
         forest, edgeless; false for connectivity, tree, star, hamiltonian,
         complete, max-degree-ge, h-index-ge.
  n = 1: one-vertex graphs count as trivial c-cores, c-trusses and
         c-edge-connected graphs, and are connected, trees, stars and
         hamiltonian.

The c-truss check asks that every vertex is covered by the maximal
triangle-support-peeling edge set. That is the reading under which the
peeling refinement below is a genuine property-guided partition; a graph in
which some low-support edge joins two covered vertices still qualifies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graphs import SimpleGraph, VertexSet, induced_simple
from .matching_engine import has_c_factor, has_perfect_matching

Partition = list[VertexSet]

PARTITIONABLE_KINDS = ("connectivity", "c-core", "c-truss", "c-edge-connectivity")
COMPLEMENT_HEREDITARY_KINDS = ("max-degree-ge", "h-index-ge")

_KINDS_WITH_C = {"c-core": 1, "c-truss": 2, "c-edge-connectivity": 1, "c-factor": 1}
_KINDS_WITH_X = {"max-degree-ge", "h-index-ge"}
_PLAIN_KINDS = {
    "connectivity",
    "matching",
    "hamiltonian",
    "tree",
    "star",
    "forest",
    "edgeless",
    "complete",
}
MAX_PATTERN_SIZE = 6


class UnsupportedPropertyError(ValueError):
    """Raised when an operation does not support the given property kind."""


@dataclass(frozen=True)
class PropertySpec:
    """Tagged descriptor of a graph property.

    kind is one of: connectivity, c-core, c-truss, c-edge-connectivity,
    matching, c-factor, hamiltonian, forbidden, max-degree-ge, h-index-ge,
    tree, star, forest, edgeless, complete.
    """

    kind: str
    c: int | None = None
    x: int | None = None
    patterns: tuple[SimpleGraph, ...] = field(default=())

    def __post_init__(self):
        if self.kind in _KINDS_WITH_C:
            if self.c is None or self.c < _KINDS_WITH_C[self.kind]:
                raise ValueError(
                    f"{self.kind} needs c >= {_KINDS_WITH_C[self.kind]}, got {self.c}"
                )
        elif self.kind in _KINDS_WITH_X:
            if self.x is None or self.x < 1:
                raise ValueError(f"{self.kind} needs a positive x, got {self.x}")
        elif self.kind == "forbidden":
            for p in self.patterns:
                if not 1 <= p.n <= MAX_PATTERN_SIZE:
                    raise ValueError(
                        f"forbidden patterns must have 1..{MAX_PATTERN_SIZE} vertices, got {p.n}"
                    )
        elif self.kind not in _PLAIN_KINDS:
            raise ValueError(f"unknown property kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind in _KINDS_WITH_C:
            return f"{self.kind}:{self.c}"
        if self.kind in _KINDS_WITH_X:
            return f"{self.kind}:{self.x}"
        return self.kind


def parse_property(text: str) -> PropertySpec:
    """Parse the CLI property grammar; forbidden:<path> loads the pattern file."""
    if ":" in text:
        head, arg = text.split(":", 1)
        if head == "forbidden":
            with open(arg, "r", encoding="utf-8") as fh:
                return PropertySpec("forbidden", patterns=parse_patterns(fh.read()))
        try:
            value = int(arg)
        except ValueError:
            raise ValueError(f"bad property parameter {arg!r} in {text!r}") from None
        if head in _KINDS_WITH_C:
            return PropertySpec(head, c=value)
        if head in _KINDS_WITH_X:
            return PropertySpec(head, x=value)
        raise ValueError(f"property {head!r} takes no parameter")
    if text in _KINDS_WITH_C or text in _KINDS_WITH_X:
        raise ValueError(f"property {text!r} requires a parameter, e.g. {text}:2")
    return PropertySpec(text)


def parse_patterns(text: str) -> tuple[SimpleGraph, ...]:
    """Parse a forbidden-pattern file: blocks of 'g <m>' then 'e <u> <v>' lines."""
    patterns: list[SimpleGraph] = []
    m = -1
    edges: list[tuple[int, int]] = []

    def flush():
        if m >= 0:
            patterns.append(SimpleGraph.from_edges(m, edges))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "g" and len(parts) == 2:
            flush()
            m = int(parts[1])
            edges = []
        elif parts[0] == "e" and len(parts) == 3:
            if m < 0:
                raise ValueError(f"line {lineno}: edge before any 'g <m>' block")
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"line {lineno}: malformed pattern line {line!r}")
    flush()
    return tuple(patterns)


# ---------------------------------------------------------------------------
# single-graph algorithms


def _connected(g: SimpleGraph) -> bool:
    # n >= 1 assumed
    masks = g.adjacency_masks()
    full = (1 << g.n) - 1
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        m = frontier
        while m:
            bit = m & -m
            nxt |= masks[bit.bit_length()]
            m &= m - 1
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def connected_components(g: SimpleGraph) -> Partition:
    masks = g.adjacency_masks()
    remaining = (1 << g.n) - 1
    cells: list[VertexSet] = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            m = frontier
            while m:
                bit = m & -m
                nxt |= masks[bit.bit_length()]
                m &= m - 1
            frontier = nxt & ~comp
            comp |= frontier
        cells.append(_mask_to_vertices(comp))
        remaining &= ~comp
    return cells


def _mask_to_vertices(mask: int) -> VertexSet:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length())
        mask &= mask - 1
    return tuple(out)


def core_vertices(g: SimpleGraph, c: int) -> VertexSet:
    """Vertices of the maximal subgraph with minimum degree >= c (degree peeling)."""
    alive = set(g.vertices())
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            if sum(1 for u in g.adj[v] if u in alive) < c:
                alive.discard(v)
                changed = True
    return tuple(sorted(alive))


def truss_edges(g: SimpleGraph, c: int) -> set[tuple[int, int]]:
    """Maximal edge set in which every edge lies in >= c-2 triangles (edge peeling)."""
    alive: set[tuple[int, int]] = set(g.edges())
    need = c - 2
    if need <= 0:
        return alive
    nbr = {v: set(g.adj[v]) for v in g.vertices()}

    def support(u: int, v: int) -> int:
        count = 0
        for w in nbr[u] & nbr[v]:
            a = (u, w) if u < w else (w, u)
            b = (v, w) if v < w else (w, v)
            if a in alive and b in alive:
                count += 1
        return count

    changed = True
    while changed:
        changed = False
        for u, v in sorted(alive):
            if support(u, v) < need:
                alive.discard((u, v))
                changed = True
    return alive


def truss_covered_vertices(g: SimpleGraph, c: int) -> VertexSet:
    covered: set[int] = set()
    for u, v in truss_edges(g, c):
        covered.add(u)
        covered.add(v)
    return tuple(sorted(covered))


def local_edge_connectivity(g: SimpleGraph, s: int, t: int, cap: int) -> int:
    """min(cap, max number of edge-disjoint s-t paths), by unit-capacity augmentation."""
    residual: dict[tuple[int, int], int] = {}
    for u, v in g.edges():
        residual[(u, v)] = 1
        residual[(v, u)] = 1
    flow = 0
    while flow < cap:
        # BFS for an augmenting path in the residual graph
        parent = {s: 0}
        queue = [s]
        while queue and t not in parent:
            u = queue.pop(0)
            for v in g.adj[u]:
                if v not in parent and residual[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            break
        v = t
        while v != s:
            u = parent[v]
            residual[(u, v)] -= 1
            residual[(v, u)] += 1
            v = u
        flow += 1
    return flow


def edge_connectivity_classes(g: SimpleGraph, c: int) -> Partition:
    """Classes of the relation "u and v are joined by >= c edge-disjoint paths"."""
    parent = list(range(g.n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for comp in connected_components(g):
        for u, v in itertools.combinations(comp, 2):
            if find(u) == find(v):
                continue
            if local_edge_connectivity(g, u, v, c) >= c:
                parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for v in g.vertices():
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(sorted(vs)) for vs in groups.values())


def has_hamiltonian_path(g: SimpleGraph) -> bool:
    """Path covering all vertices, by dynamic programming over vertex subsets."""
    n = g.n
    if n == 0:
        return False
    if n == 1:
        return True
    masks = g.adjacency_masks()
    if any(masks[v] == 0 for v in g.vertices()):
        return False
    if not _connected(g):
        return False
    full = (1 << n) - 1
    # dp[mask] = bitmask of vertices at which some path covering mask can end
    dp = [0] * (full + 1)
    for v in range(1, n + 1):
        dp[1 << (v - 1)] = 1 << (v - 1)
    for mask in range(1, full + 1):
        ends = dp[mask]
        if not ends:
            continue
        e = ends
        while e:
            bit = e & -e
            e &= e - 1
            nxt = masks[bit.bit_length()] & ~mask
            while nxt:
                nb = nxt & -nxt
                nxt &= nxt - 1
                new_mask = mask | nb
                if new_mask == full:
                    return True
                dp[new_mask] |= nb
    return False


def h_index_at_least(g: SimpleGraph, x: int) -> bool:
    return sum(1 for v in g.vertices() if g.degree(v) >= x) >= x


def _is_forest(g: SimpleGraph) -> bool:
    return g.edge_count() == g.n - len(connected_components(g))


# ---------------------------------------------------------------------------
# induced-pattern search


def _degree_sequence(adj_masks: list[int]) -> list[int]:
    return sorted(m.bit_count() for m in adj_masks[1:])


def _isomorphic_to(sub_masks: list[int], pattern: SimpleGraph) -> bool:
    """Exhaustive mapping test for graphs on <= MAX_PATTERN_SIZE vertices."""
    n = pattern.n
    pat_masks = pattern.adjacency_masks()
    if _degree_sequence(sub_masks) != _degree_sequence(pat_masks):
        return False
    sub_deg = [m.bit_count() for m in sub_masks]
    pat_deg = [m.bit_count() for m in pat_masks]

    assignment = [0] * (n + 1)  # pattern vertex -> subset vertex (1-indexed)
    used = [False] * (n + 1)

    def assign(p: int) -> bool:
        if p > n:
            return True
        for s in range(1, n + 1):
            if used[s] or pat_deg[p] != sub_deg[s]:
                continue
            ok = True
            for q in range(1, p):
                pat_adj = bool(pat_masks[p] & (1 << (q - 1)))
                sub_adj = bool(sub_masks[s] & (1 << (assignment[q] - 1)))
                if pat_adj != sub_adj:
                    ok = False
                    break
            if ok:
                assignment[p] = s
                used[s] = True
                if assign(p + 1):
                    return True
                used[s] = False
        return False

    return assign(1)


def iter_forbidden_occurrences(g: SimpleGraph, patterns: tuple[SimpleGraph, ...]):
    """Yield, in lexicographic order, every vertex set inducing some pattern."""
    sizes = sorted({p.n for p in patterns if p.n <= g.n})
    if not sizes:
        return
    by_size: dict[int, list[SimpleGraph]] = {}
    for p in patterns:
        by_size.setdefault(p.n, []).append(p)
    candidates: list[VertexSet] = []
    for size in sizes:
        candidates.extend(itertools.combinations(range(1, g.n + 1), size))
    candidates.sort()
    for subset in candidates:
        sub, _ = induced_simple(g, subset)
        sub_masks = sub.adjacency_masks()
        if any(_isomorphic_to(sub_masks, p) for p in by_size[len(subset)]):
            yield subset


def find_forbidden(g: SimpleGraph, patterns: tuple[SimpleGraph, ...]) -> VertexSet | None:
    """Lexicographically smallest vertex set inducing a graph isomorphic to a pattern."""
    return next(iter_forbidden_occurrences(g, patterns), None)


# ---------------------------------------------------------------------------
# membership and refinement


def check(g: SimpleGraph, pi: PropertySpec) -> bool:
    """Decide whether g has property pi (see module docstring for conventions)."""
    kind = pi.kind
    n = g.n
    if kind == "connectivity":
        return n >= 1 and _connected(g)
    if kind == "c-core":
        if n <= 1:
            return True
        return all(g.degree(v) >= pi.c for v in g.vertices())
    if kind == "c-truss":
        if n <= 1:
            return True
        return len(truss_covered_vertices(g, pi.c)) == n
    if kind == "c-edge-connectivity":
        if n <= 1:
            return True
        if not _connected(g):
            return False
        return all(
            local_edge_connectivity(g, 1, v, pi.c) >= pi.c for v in range(2, n + 1)
        )
    if kind == "matching":
        return has_perfect_matching(g)
    if kind == "c-factor":
        return has_c_factor(g, pi.c)
    if kind == "hamiltonian":
        return has_hamiltonian_path(g)
    if kind == "forbidden":
        return find_forbidden(g, pi.patterns) is None
    if kind == "max-degree-ge":
        return any(g.degree(v) >= pi.x for v in g.vertices())
    if kind == "h-index-ge":
        return h_index_at_least(g, pi.x)
    if kind == "tree":
        return n >= 1 and _connected(g) and g.edge_count() == n - 1
    if kind == "star":
        if n == 0:
            return False
        if not (_connected(g) and g.edge_count() == n - 1):
            return False
        return sum(1 for v in g.vertices() if g.degree(v) >= 2) <= 1
    if kind == "forest":
        return _is_forest(g)
    if kind == "edgeless":
        return g.edge_count() == 0
    if kind == "complete":
        return n >= 1 and g.edge_count() == n * (n - 1) // 2
    raise UnsupportedPropertyError(f"no membership check for kind {kind!r}")


def validate_partition(n: int, cells: Partition) -> None:
    seen: set[int] = set()
    for cell in cells:
        if not cell:
            raise ValueError("empty partition cell")
        if set(cell) & seen:
            raise ValueError("overlapping partition cells")
        seen.update(cell)
    if seen != set(range(1, n + 1)):
        raise ValueError("partition does not cover 1..n")


def pi_refine(g: SimpleGraph, pi: PropertySpec) -> Partition:
    """Property-guided refinement of g's vertex set.

    Guarantees: if g has the property the result is the single cell {1..n};
    otherwise (n >= 2) the result is strictly finer than {V}; and every X with
    g[X] in the property lies inside one cell. Cells themselves are re-checked
    by the multi-layer refinement loop, not here.
    """
    kind = pi.kind
    if kind not in PARTITIONABLE_KINDS:
        raise UnsupportedPropertyError(f"pi_refine does not support kind {kind!r}")
    if g.n == 0:
        return []
    if kind == "connectivity":
        cells = connected_components(g)
    elif kind == "c-core":
        core = core_vertices(g, pi.c)
        rest = sorted(set(g.vertices()) - set(core))
        cells = ([core] if core else []) + [(v,) for v in rest]
    elif kind == "c-truss":
        covered = truss_covered_vertices(g, pi.c)
        rest = sorted(set(g.vertices()) - set(covered))
        cells = ([covered] if covered else []) + [(v,) for v in rest]
    else:  # c-edge-connectivity
        cells = edge_connectivity_classes(g, pi.c)
    cells = sorted(cells)
    validate_partition(g.n, cells)
    if check(g, pi):
        assert cells == [tuple(g.vertices())]
    elif g.n >= 2:
        assert len(cells) >= 2, f"refinement failed to split a non-member ({kind})"
    return cells
