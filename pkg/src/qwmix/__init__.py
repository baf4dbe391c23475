"""Exact continuous-time quantum walks on generalized hypercubes and
detection of instantaneous uniform mixing."""

from .graphs import (
    DEGREE_NORMALIZED,
    UNNORMALIZED,
    Bunkbed,
    Circulant,
    Complete,
    Product,
    Scaling,
    bunkbed_spec,
    circulant_spec,
    complete_spec,
    dense_adjacency,
    eigenvalues,
    eta_cube_spec,
    hamming_spec,
    hypercube_spec,
)
from .mixing import (
    MixingReport,
    distribution,
    k_eta,
    phat,
    phat_direct,
    scan,
    tv_distance,
)
from .walk import (
    AmplitudeVector,
    InitialState,
    circulant_walk,
    complete_graph_walk,
    dense_walk_oracle,
    evolve,
    product_walk,
)
from .z2n import BACKEND, BooleanFunction, GroupElement, fwht, inverse_fwht

__version__ = "0.1.0"

__all__ = [
    "AmplitudeVector", "BACKEND", "BooleanFunction", "Bunkbed", "Circulant", "Complete",
    "DEGREE_NORMALIZED", "GroupElement", "InitialState", "MixingReport", "Product",
    "Scaling", "UNNORMALIZED", "bunkbed_spec", "circulant_spec", "circulant_walk",
    "complete_graph_walk", "complete_spec", "dense_adjacency", "dense_walk_oracle",
    "distribution", "eigenvalues", "eta_cube_spec", "evolve", "fwht", "hamming_spec",
    "hypercube_spec", "inverse_fwht", "k_eta", "phat", "phat_direct", "product_walk",
    "scan", "tv_distance",
]
