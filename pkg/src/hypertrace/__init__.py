"""Exact tensor traces and certified Estrada indices of hypertrees and linear unicyclic hypergraphs."""

from .canonical import canonical_form, is_isomorphic
from .enumerate import (
    SubhypergraphClass,
    WeightComposition,
    connected_subhypergraphs,
    enumerate_hypertrees,
    enumerate_pm_hypertrees,
    enumerate_unicyclic,
    filtered_subhypergraphs,
    weight_compositions,
)
from .errors import (
    ConstructionError,
    HypertraceError,
    HypothesisError,
    InputError,
    ResourceLimitError,
    UnsupportedTopologyError,
)
from .estrada import CertifiedValue, compare_ee, default_depth, estrada_truncated
from .hypergraph import (
    Hypergraph,
    RootedSite,
    attach,
    build_family_primitive,
    coalesce,
    degree,
    girth,
    has_perfect_matching,
    hyperpath,
    hyperstar,
    is_connected,
    is_hypertree,
    is_linear,
    is_linear_unicyclic,
    loose_cycle,
    power_of_graph,
    single_edge,
)
from .oracle import (
    arborescence_count,
    build_R,
    c_H_oracle,
    euler_rootings,
    is_eulerian,
    matrix_power_trace,
    trace_bruteforce,
)
from .traces import (
    WeightedSubhypergraph,
    c_tree,
    c_unicyclic,
    factorial_inequality_check,
    omega_cycle,
    partial_tree_factor,
    partial_unicyclic_factor,
    tr_d,
    trace,
    weighted,
    weighted_degree,
)
from .verify import LemmaInstance, check_extremal_theorem, check_perturbation, check_structure_lemma

__version__ = "0.1.0"
