"""Problem instances and validated answers.

An Instance asks: is there a vertex set X with |X| >= k that induces a graph
with the given property in at least ell of the t layers? A yes-Answer always
carries a witness, and the witness is re-validated on construction, so a
solver bug cannot produce a bogus certificate silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import MultiLayerGraph, VertexSet, induced_simple
from .properties import PropertySpec, check


@dataclass(frozen=True)
class Instance:
    graph: MultiLayerGraph
    pi: PropertySpec
    k: int
    ell: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        if not 1 <= self.ell <= self.graph.t:
            raise ValueError(f"ell must be in 1..{self.graph.t}, got {self.ell}")


@dataclass(frozen=True)
class Answer:
    decision: bool
    witness_vertices: VertexSet | None = None
    witness_layers: tuple[int, ...] | None = None

    @staticmethod
    def no() -> Answer:
        return Answer(False)

    @staticmethod
    def yes(inst: Instance, X: VertexSet, layers: tuple[int, ...]) -> Answer:
        """Build a yes-answer, revalidating the witness against the checker."""
        X = tuple(sorted(X))
        layers = tuple(sorted(layers))
        if len(X) < inst.k:
            raise ValueError(f"witness has {len(X)} < k = {inst.k} vertices")
        if len(layers) < inst.ell:
            raise ValueError(f"witness has {len(layers)} < ell = {inst.ell} layers")
        for i in layers:
            sub, _ = induced_simple(inst.graph.layer(i), X)
            if not check(sub, inst.pi):
                raise ValueError(f"witness fails property check on layer {i}")
        return Answer(True, X, layers)

    def __post_init__(self):
        if self.decision:
            if self.witness_vertices is None or self.witness_layers is None:
                raise ValueError("yes-answer requires a witness")
        else:
            if self.witness_vertices is not None or self.witness_layers is not None:
                raise ValueError("no-answer must not carry a witness")
