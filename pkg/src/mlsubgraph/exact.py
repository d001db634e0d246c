"""Brute-force reference solver and the hereditary-property fast paths.

brute_force_solve is the universal referee: every other solver in this
package is tested against it. It scans vertex subsets in descending size so
the returned witness has maximum cardinality, with lexicographic order inside
each size for reproducibility.
"""

from __future__ import annotations

import itertools
import math

from .graphs import MultiLayerGraph, induced_simple
from .instance import Answer, Instance
from .properties import COMPLEMENT_HEREDITARY_KINDS, UnsupportedPropertyError, check


def _qualifying_layers(G: MultiLayerGraph, X, pi, need: int) -> tuple[int, ...] | None:
    """First `need` layers whose induced subgraph passes, or None if < need qualify."""
    good: list[int] = []
    remaining = G.t
    for i in range(1, G.t + 1):
        remaining -= 1
        sub, _ = induced_simple(G.layers[i - 1], X)
        if check(sub, pi):
            good.append(i)
            if len(good) == need:
                return tuple(good)
        elif len(good) + remaining < need:
            return None
    return None


def brute_force_solve(inst: Instance) -> Answer:
    """Exact decision by scanning all vertex subsets of size n down to k.

    The witness is the lexicographically smallest maximum-cardinality feasible
    set, paired with its smallest qualifying layer ids. Intended for desk
    scale (n up to ~16); there is no hard limit.
    """
    G = inst.graph
    for size in range(G.n, inst.k - 1, -1):
        for X in itertools.combinations(range(1, G.n + 1), size):
            layers = _qualifying_layers(G, X, inst.pi, inst.ell)
            if layers is not None:
                return Answer.yes(inst, X, layers)
    return Answer.no()


def maximum_feasible_size(G: MultiLayerGraph, pi, ell: int) -> int:
    """Largest |X| such that X qualifies in at least ell layers; 0 if none."""
    for size in range(G.n, 0, -1):
        for X in itertools.combinations(range(1, G.n + 1), size):
            if _qualifying_layers(G, X, pi, ell) is not None:
                return size
    return 0


def ramsey_bound(p: int, q: int) -> int:
    """Binomial upper bound C(p+q-2, q-1) on the Ramsey number R(p, q)."""
    if p < 1 or q < 1:
        raise ValueError("Ramsey arguments must be positive")
    return math.comb(p + q - 2, q - 1)


def nested_ramsey_bound(ell: int, k: int) -> int:
    """Iterated bound: level 1 is ramsey_bound(k, k), each later level feeds
    the previous value into both arguments. Grows doubly exponentially; exact
    integer arithmetic throughout."""
    if ell < 1 or k < 1:
        raise ValueError("arguments must be positive")
    value = ramsey_bound(k, k)
    for _ in range(ell - 1):
        value = ramsey_bound(value, value)
    return value


def case1_early_no(p: int, q: int, k: int) -> bool:
    """Case-1 shortcut: with the smallest excluded complete graph of size p and
    edgeless graph of size q, any k >= ramsey_bound(p, q) is infeasible."""
    return k >= ramsey_bound(p, q)


def hereditary_solve(
    inst: Instance,
    excluded_clique: int | None = None,
    excluded_edgeless: int | None = None,
    includes_both: bool = False,
) -> Answer:
    """Solver for hereditary properties with a caller-declared classification.

    Case 1 (excluded_clique=p, excluded_edgeless=q): if k >= ramsey_bound(p, q)
    the answer is no without enumeration; otherwise only size-k subsets are
    scanned (sufficient by heredity). Case 2 (includes_both=True): if
    n >= nested_ramsey_bound(ell, k) a witness must exist and is extracted by
    brute force; otherwise fall back to brute force.
    """
    if includes_both:
        if excluded_clique is not None or excluded_edgeless is not None:
            raise ValueError("includes_both excludes the case-1 parameters")
        if inst.graph.n >= nested_ramsey_bound(inst.ell, inst.k):
            ans = brute_force_solve(inst)
            assert ans.decision, "bound promised a witness but none was found"
            return ans
        return brute_force_solve(inst)
    if excluded_clique is None or excluded_edgeless is None:
        raise ValueError("case 1 needs both excluded_clique and excluded_edgeless")
    if case1_early_no(excluded_clique, excluded_edgeless, inst.k):
        return Answer.no()
    G = inst.graph
    for X in itertools.combinations(range(1, G.n + 1), inst.k):
        layers = _qualifying_layers(G, X, inst.pi, inst.ell)
        if layers is not None:
            return Answer.yes(inst, X, layers)
    return Answer.no()


def complement_hereditary_solve(inst: Instance) -> Answer:
    """Whole-layer shortcut for properties preserved under taking supergraphs.

    Membership of an induced subgraph forces membership of the whole layer, so
    it suffices to count layers that qualify as-is and answer with X = V.
    """
    if inst.pi.kind not in COMPLEMENT_HEREDITARY_KINDS:
        raise UnsupportedPropertyError(
            f"complement-hereditary shortcut does not apply to {inst.pi.kind!r}"
        )
    G = inst.graph
    if inst.k > G.n:
        return Answer.no()
    good = [i for i in range(1, G.t + 1) if check(G.layers[i - 1], inst.pi)]
    if len(good) < inst.ell:
        return Answer.no()
    return Answer.yes(inst, tuple(range(1, G.n + 1)), tuple(good[: inst.ell]))
