"""Mapping/tree bijections, a linear-time uniform tree sampler, and checks
of the concentration bounds they yield."""

from .bijection import (
    DeltaReport,
    Variant,
    joyal,
    joyal_inverse,
    map_to_tree_with_report,
    renyi_joyal,
    renyi_joyal_inverse,
    restricted_renyi_joyal,
    restricted_renyi_joyal_inverse,
)
from .graph_core import (
    CoreDecomposition,
    DoublyRootedTree,
    EdgeMultiset,
    Endofunction,
    InvalidTreeError,
    LabeledTree,
    RestrictionError,
    collapse_to_complement,
    core_decompose,
    cycle_count,
    edge_multiset,
    is_independent_set,
    path_between,
    symmetric_difference_size,
    unconnected_count,
    validate_tree,
    verify_core_permutation,
)
from .sampler import (
    SeededRng,
    sample_independent_tree,
    sample_mapping,
    sample_restricted_mapping,
    sample_tree,
)

__version__ = "0.1.0"
