"""Random-graph diameter laboratory.

Sieve-based probability bounds for graphs of diameter <= 2 (diameter <= 3
for bipartite families), exact rational verification at desk scale, and a
deterministic parallel Monte Carlo simulator for large instances.
"""

from .bounds import (
    BoundPair,
    ThresholdSpec,
    applicable_bounds,
    bipartite_asymptotic_bounds,
    bipartite_bounds,
    bipartite_half_bounds,
    bipartite_turan_asymptotic_bounds,
    bipartite_turan_bounds,
    bipartite_turan_half_lower,
    directed_adjust,
    gnp_asymptotic_bounds,
    gnp_asymptotic_upper_alt,
    gnp_bounds,
    gnp_half_lower,
    kpartite_asymptotic_bounds,
    kpartite_bounds,
    kpartite_half_lower,
    kpartite_turan_asymptotic_bounds,
    kpartite_turan_bounds,
    kpartite_turan_half_lower,
    solve_threshold_p,
    threshold_c,
    turan_bipartite_threshold_c,
    turan_kpartite_threshold_c,
)
from .errors import DomainError, GraphSieveError, ResourceError
from .graphs import (
    INFINITE,
    AdjacencyMatrix,
    Diameter,
    FamilyKind,
    GraphFamily,
    PartitionShape,
    bipartite_has_diameter_le3,
    directed_bipartite_has_diameter_le3,
    directed_has_diameter_le2,
    family_success,
    graph_diameter,
    has_diameter_le2,
    make_shape,
    sample_graph,
    turan_shape,
)
from .montecarlo import TrialEstimate, estimate, wilson_interval
from .oracle import (
    DEFAULT_MAX_EDGES,
    EnumerationBudget,
    brute_incidence_stats,
    exact_diameter_prob,
)
from .sieve import (
    IncidenceStats,
    WitnessPair,
    enumerate_witness_pairs,
    incidence_stats,
    joint_survival_prob,
    pair_survival_prob,
    sieve_bounds,
    simple_sieve_lower,
    turan_sieve_upper,
    witness_pair,
)

__version__ = "0.1.0"
