"""Rigidity and stiffness matrices of graph frameworks and their blow-ups."""

from stiffblow.errors import InvalidArgument, OutOfHypothesis
from stiffblow.graphs import (
    BlowupIndex,
    Graph,
    blow_up,
    blow_up_embedding,
    complete_bipartite,
    complete_graph,
    generalized_star,
)
from stiffblow.framework import (
    Framework,
    direction,
    edge_angle_cos,
    local_rigidity_matrix,
    local_stiffness,
    lower_stiffness,
    lower_stiffness_closed_form,
    rigidity_matrix,
    stiffness,
)
from stiffblow.spectra import (
    Spectrum,
    eigenvalues_sym,
    kth_smallest,
    multiset_equal,
    rank_tol,
    spectral_gap,
)

__all__ = [
    "BlowupIndex",
    "Framework",
    "Graph",
    "InvalidArgument",
    "OutOfHypothesis",
    "Spectrum",
    "blow_up",
    "blow_up_embedding",
    "complete_bipartite",
    "complete_graph",
    "direction",
    "edge_angle_cos",
    "eigenvalues_sym",
    "generalized_star",
    "kth_smallest",
    "local_rigidity_matrix",
    "local_stiffness",
    "lower_stiffness",
    "lower_stiffness_closed_form",
    "multiset_equal",
    "rank_tol",
    "rigidity_matrix",
    "spectral_gap",
    "stiffness",
]
