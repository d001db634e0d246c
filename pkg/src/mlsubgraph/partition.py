"""Iterative property-guided partition refinement across layers.

partition_solve_all_layers maintains a partition of the vertex set, starting
from {V}; while some cell fails the property in some layer, that cell is
replaced by the property-guided refinement of its induced subgraph in that
layer. On termination every cell satisfies the property in every layer, and
every common solution set is contained in some cell, so the cells are exactly
the maximal common solution sets. At most n refinement steps can occur
because every step strictly increases the number of cells.
"""

from __future__ import annotations

import itertools

from .graphs import MultiLayerGraph, VertexSet, induced_simple, restrict_layers
from .instance import Answer, Instance
from .properties import (
    PARTITIONABLE_KINDS,
    PropertySpec,
    UnsupportedPropertyError,
    check,
    pi_refine,
)


def _require_partitionable(pi: PropertySpec) -> None:
    if pi.kind not in PARTITIONABLE_KINDS:
        raise UnsupportedPropertyError(
            f"partition solver does not support kind {pi.kind!r}"
        )


def refine_common_cells(
    G: MultiLayerGraph, pi: PropertySpec, scan_order: str = "layer-major"
) -> tuple[list[VertexSet], int]:
    """Run the refinement loop; returns (final cells, refinement step count).

    scan_order fixes which violating (cell, layer) pair is refined first;
    the final cell set is independent of this choice.
    """
    _require_partitionable(pi)
    if scan_order not in ("layer-major", "cell-major"):
        raise ValueError(f"unknown scan order {scan_order!r}")
    if G.n == 0:
        return [], 0
    cells: list[VertexSet] = [tuple(range(1, G.n + 1))]
    # verified[ci] is True once cell ci passed every layer; refinement never
    # touches such cells again, so they stay verified.
    verified = [False]
    steps = 0

    def find_violation():
        if scan_order == "layer-major":
            pairs = ((i, ci) for i in range(1, G.t + 1) for ci in range(len(cells)))
        else:
            pairs = ((i, ci) for ci in range(len(cells)) for i in range(1, G.t + 1))
        for i, ci in pairs:
            if verified[ci]:
                continue
            sub, relabel = induced_simple(G.layers[i - 1], cells[ci])
            if not check(sub, pi):
                return ci, sub, relabel
        return None

    while True:
        hit = find_violation()
        if hit is None:
            break
        ci, sub, relabel = hit
        back = {new: old for old, new in relabel.items()}
        parts = pi_refine(sub, pi)
        steps += 1
        assert steps <= G.n, "refinement exceeded the n-step bound"
        new_cells = [tuple(sorted(back[v] for v in cell)) for cell in parts]
        assert len(new_cells) >= 2, "refinement step did not split the cell"
        del cells[ci]
        del verified[ci]
        cells.extend(new_cells)
        verified.extend([False] * len(new_cells))
        order = sorted(range(len(cells)), key=lambda j: cells[j])
        cells = [cells[j] for j in order]
        verified = [verified[j] for j in order]
    return cells, steps


def partition_solve_all_layers(G: MultiLayerGraph, pi: PropertySpec) -> list[VertexSet]:
    """All maximal X such that every layer's induced subgraph on X qualifies."""
    cells, _ = refine_common_cells(G, pi)
    return cells


def _best_cell(cells: list[VertexSet], k: int) -> VertexSet | None:
    """Largest cell of size >= k; ties broken by lexicographic order."""
    big = [c for c in cells if len(c) >= k]
    if not big:
        return None
    top = max(len(c) for c in big)
    return min(c for c in big if len(c) == top)


def partition_solve(inst: Instance) -> Answer:
    """Decide the instance by refining over every ell-subset of layers.

    The witness comes from the lexicographically first layer subset that
    yields a cell of size >= k.
    """
    _require_partitionable(inst.pi)
    G = inst.graph
    for L in itertools.combinations(range(1, G.t + 1), inst.ell):
        sub = restrict_layers(G, L) if inst.ell < G.t else G
        cells, _ = refine_common_cells(sub, inst.pi)
        best = _best_cell(cells, inst.k)
        if best is not None:
            return Answer.yes(inst, best, L)
    return Answer.no()


def partition_maximum_size(G: MultiLayerGraph, pi: PropertySpec, ell: int) -> int:
    """Largest cell size over all ell-subsets of layers (0 when n = 0)."""
    _require_partitionable(pi)
    best = 0
    for L in itertools.combinations(range(1, G.t + 1), ell):
        sub = restrict_layers(G, L) if ell < G.t else G
        cells, _ = refine_common_cells(sub, pi)
        if cells:
            best = max(best, max(len(c) for c in cells))
    return best
