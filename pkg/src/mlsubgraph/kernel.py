"""Search-tree solver, two-color hitting-set reduction, sunflower kernel.

For properties given by finitely many forbidden induced patterns, the
question "keep at least k vertices and at least ell layers, every surviving
layer pattern-free" becomes a deletion problem with budgets b = n - k vertex
deletions and w = t - ell layer deletions. Three routes are provided: a
branching search tree, an explicit reduction to a two-color hitting-set
system, and a sunflower-based kernelization of that system.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .graphs import MultiLayerGraph, VertexSet, induced_simple
from .instance import Answer, Instance
from .properties import find_forbidden, iter_forbidden_occurrences

Element = object  # ground elements only need to be hashable and sortable
SetFamily = tuple[frozenset, ...]


@dataclass(frozen=True)
class SetSystem:
    """Two-color hitting-set instance.

    Hit every member of `family` with at most b elements of B plus at most w
    elements of W. A system with marked_no=True was recognized infeasible
    during kernelization.
    """

    B: frozenset
    W: frozenset
    family: SetFamily
    b: int
    w: int
    marked_no: bool = False

    def __post_init__(self):
        if self.b < 0 or self.w < 0:
            raise ValueError("budgets must be non-negative")
        if self.B & self.W:
            raise ValueError("ground sets must be disjoint")
        ground = self.B | self.W
        for F in self.family:
            if not F <= ground:
                raise ValueError("family member uses elements outside B and W")


@dataclass(frozen=True)
class Sunflower:
    petals: SetFamily
    core: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if len(self.petals) < 2:
            raise ValueError("a sunflower needs at least two petals")
        for P, Q in itertools.combinations(self.petals, 2):
            if P & Q != self.core:
                raise ValueError("petal pair intersection differs from the core")


def _set_key(s: frozenset):
    return tuple(sorted(s))


# ---------------------------------------------------------------------------
# search tree


def _budgets(inst: Instance) -> tuple[int, int]:
    if inst.pi.kind != "forbidden":
        raise ValueError("search-tree solver requires a forbidden-pattern property")
    b = inst.graph.n - inst.k
    if b < 0:
        raise ValueError(f"vertex budget n - k = {b} is negative")
    return b, inst.graph.t - inst.ell


def search_tree_solve_with_stats(inst: Instance) -> tuple[Answer, int]:
    """Branching solver; also returns the number of branching nodes.

    At a surviving occurrence of a forbidden pattern, branch on deleting each
    of its vertices and on deleting its layer; budgets bound the depth, so the
    number of branching nodes is at most (d+1)^(b+w) for pattern size <= d.
    """
    b, w = _budgets(inst)
    G = inst.graph
    patterns = inst.pi.patterns
    nodes = 0
    dead: set[tuple[VertexSet, tuple[int, ...]]] = set()

    def first_occurrence(alive_v: VertexSet, alive_l: tuple[int, ...]):
        for i in alive_l:
            sub, relabel = induced_simple(G.layers[i - 1], alive_v)
            occ = find_forbidden(sub, patterns)
            if occ is not None:
                back = {new: old for old, new in relabel.items()}
                return tuple(back[v] for v in occ), i
        return None

    def dfs(alive_v: VertexSet, alive_l: tuple[int, ...]):
        nonlocal nodes
        state = (alive_v, alive_l)
        if state in dead:
            return None
        hit = first_occurrence(alive_v, alive_l)
        if hit is None:
            return state
        b_left = b - (G.n - len(alive_v))
        w_left = w - (G.t - len(alive_l))
        if b_left == 0 and w_left == 0:
            dead.add(state)
            return None
        occ, layer_i = hit
        nodes += 1
        if b_left > 0:
            for v in occ:
                result = dfs(tuple(x for x in alive_v if x != v), alive_l)
                if result is not None:
                    return result
        if w_left > 0:
            result = dfs(alive_v, tuple(i for i in alive_l if i != layer_i))
            if result is not None:
                return result
        dead.add(state)
        return None

    outcome = dfs(tuple(range(1, G.n + 1)), tuple(range(1, G.t + 1)))
    if outcome is None:
        return Answer.no(), nodes
    X, layers = outcome
    return Answer.yes(inst, X, layers), nodes


def search_tree_solve(inst: Instance) -> Answer:
    answer, _ = search_tree_solve_with_stats(inst)
    return answer


# ---------------------------------------------------------------------------
# reduction to 2-color hitting set


def vertex_element(v: int) -> tuple[str, int]:
    return ("v", v)


def layer_element(i: int) -> tuple[str, int]:
    return ("l", i)


def reduce_to_2chs(inst: Instance) -> SetSystem:
    """One set per forbidden occurrence: its vertices plus its layer's element."""
    b, w = _budgets(inst)
    G = inst.graph
    family: list[frozenset] = []
    for i in range(1, G.t + 1):
        for occ in iter_forbidden_occurrences(G.layers[i - 1], inst.pi.patterns):
            family.append(frozenset(map(vertex_element, occ)) | {layer_element(i)})
    return SetSystem(
        B=frozenset(vertex_element(v) for v in range(1, G.n + 1)),
        W=frozenset(layer_element(i) for i in range(1, G.t + 1)),
        family=tuple(sorted(set(family), key=_set_key)),
        b=b,
        w=w,
    )


def hitting_set_solve(sys: SetSystem) -> bool:
    """Exact decision by exhausting <= b subsets of B crossed with <= w of W."""
    if sys.marked_no:
        return False
    if not sys.family:
        return True
    if any(not F for F in sys.family):
        return False
    occurring = frozenset().union(*sys.family)
    b_candidates = sorted(sys.B & occurring)
    w_candidates = sorted(sys.W & occurring)
    for nb in range(0, min(sys.b, len(b_candidates)) + 1):
        for SB in itertools.combinations(b_candidates, nb):
            sb = set(SB)
            rest = [F for F in sys.family if not (F & sb)]
            if not rest:
                return True
            for nw in range(0, min(sys.w, len(w_candidates)) + 1):
                for SW in itertools.combinations(w_candidates, nw):
                    sw = set(SW)
                    if all(F & sw for F in rest):
                        return True
    return False


# ---------------------------------------------------------------------------
# sunflowers


def _greedy_disjoint(sets: list[frozenset], core: frozenset) -> list[frozenset]:
    """Lexicographic greedy collection of sets pairwise disjoint outside the core."""
    petals: list[frozenset] = []
    for S in sets:
        extra = S - core
        if all(extra.isdisjoint(P - core) for P in petals):
            petals.append(S)
    return petals


def find_sunflower(family, target_size: int) -> Sunflower | None:
    """Search for a sunflower with at least target_size petals.

    Follows the classical core-growing procedure: greedily collect petals
    disjoint outside the current core; if too few, recurse on each element of
    their union. Whenever the family is larger than d! * (target_size - 1)^d
    (d the maximum set size) this is guaranteed to succeed, which is exactly
    what the kernel size bound needs; a None therefore certifies the family is
    already small.
    """
    if target_size < 2:
        raise ValueError("a sunflower needs at least 2 petals")
    sets = sorted({frozenset(S) for S in family}, key=_set_key)

    def grow(candidates: list[frozenset], core: frozenset) -> Sunflower | None:
        petals = _greedy_disjoint(candidates, core)
        if len(petals) >= target_size:
            return Sunflower(tuple(petals), core)
        union = sorted({x for P in petals for x in P - core})
        for x in union:
            sub = [S for S in candidates if x in S]
            if len(sub) >= target_size:
                found = grow(sub, core | {x})
                if found is not None:
                    return found
        return None

    return grow(sets, frozenset())


def sunflower_kernel_bound(d: int, b: int, w: int) -> int:
    """Family-size bound after kernelization with budgets b, w and set size <= d."""
    return math.factorial(d) * (b + w + 1) ** d


def sunflower_kernelize(sys: SetSystem) -> SetSystem:
    """Shrink the family by removing one petal from every large sunflower.

    A sunflower with b+w+2 petals forces any within-budget hitting set to hit
    the core, which then also hits a removed petal, so removal is safe. At
    least b+w+1 pairwise disjoint nonempty sets (an empty-core sunflower)
    cannot all be hit within budget, which certifies a no-instance; the result
    is then a canonical marked-no system whose single empty set keeps the
    serialized kernel unhittable. Elements left uncovered by the final family
    are dropped from the ground sets.
    """
    if sys.marked_no:
        return sys
    budget = sys.b + sys.w
    family = sorted({frozenset(F) for F in sys.family}, key=_set_key)

    def marked_no() -> SetSystem:
        return SetSystem(
            B=frozenset(),
            W=frozenset(),
            family=(frozenset(),),
            b=sys.b,
            w=sys.w,
            marked_no=True,
        )

    if any(not F for F in family):
        return marked_no()
    if len(_greedy_disjoint(family, frozenset())) >= budget + 1:
        return marked_no()
    while True:
        sunflower = find_sunflower(family, budget + 2)
        if sunflower is None:
            break
        if not sunflower.core:
            return marked_no()
        family.remove(max(sunflower.petals, key=_set_key))
    occurring = frozenset().union(*family) if family else frozenset()
    return SetSystem(
        B=sys.B & occurring,
        W=sys.W & occurring,
        family=tuple(family),
        b=sys.b,
        w=sys.w,
    )


def serialize_hs(sys: SetSystem) -> str:
    """Kernel output format: header then one 's' line per set.

    Vertex elements print as v<i> and layer elements as l<j>; within a set the
    vertex elements come first, each group in ascending index order.
    """

    def element_text(e) -> str:
        tag, idx = e
        return f"{tag}{idx}"

    def element_key(e):
        tag, idx = e
        return (0 if tag == "v" else 1, idx)

    lines = [f"p 2chs {len(sys.B)} {len(sys.W)} {len(sys.family)} {sys.b} {sys.w}"]
    for F in sorted(sys.family, key=lambda F: sorted(F, key=element_key)):
        members = " ".join(element_text(e) for e in sorted(F, key=element_key))
        lines.append(f"s {members}".rstrip())
    return "\n".join(lines) + "\n"
