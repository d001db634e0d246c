"""Exact toolkit for multi-layer subgraph detection.

Find a vertex set of size at least k inducing a graph with a chosen property
in at least ell of t layers: brute-force referee, partition-refinement and
matching-based solvers, forbidden-pattern search tree with sunflower
kernelization, and hardness-gadget instance generators.
"""

from .exact import (
    brute_force_solve,
    complement_hereditary_solve,
    hereditary_solve,
    maximum_feasible_size,
    nested_ramsey_bound,
    ramsey_bound,
)
from .gadgets import (
    ColoredGraph,
    GadgetOutput,
    biclique_to_piml,
    build_property_gadget,
    gen_colored_source,
    mcb_to_hamiltonian,
    mcc_to_cfactor,
    mcc_to_matching,
    pad_layers,
)
from .graphs import (
    MlgParseError,
    MultiLayerGraph,
    SimpleGraph,
    induced,
    induced_simple,
    parse_mlg,
    restrict_layers,
    serialize_mlg,
)
from .instance import Answer, Instance
from .kernel import (
    SetSystem,
    Sunflower,
    find_sunflower,
    hitting_set_solve,
    reduce_to_2chs,
    search_tree_solve,
    serialize_hs,
    sunflower_kernelize,
)
from .matching_engine import WeightedGraph, has_c_factor, has_perfect_matching, max_weight_matching
from .matching_solver import (
    build_matching_reduction,
    matching_ml_solve,
    per_layer_solve,
    two_layer_matching_solve,
    two_layer_max_matchable,
)
from .partition import partition_solve, partition_solve_all_layers
from .properties import (
    PropertySpec,
    check,
    find_forbidden,
    parse_patterns,
    parse_property,
    pi_refine,
)

__version__ = "0.1.0"
