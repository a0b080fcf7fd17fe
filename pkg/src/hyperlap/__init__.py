"""Hyperedge centrality from generalized hypergraph Laplacians."""

from .centrality import (
    CentralityResult,
    SimplexGraph,
    betweenness_centrality,
    closeness_centrality,
    compute_centralities,
    degree_centrality,
    rank,
    shortest_path_lengths,
)
from .errors import (
    ArgumentError,
    DegenerateNetworkError,
    FormatError,
    HyperlapError,
    InputError,
    NumericalError,
    PreconditionError,
    SimplexLookupError,
    SimulationError,
)
from .experiments import (
    DatasetStats,
    DiffusionIndexReport,
    dataset_report,
    diffusion_index,
    infection_sweep,
    part_removal_experiment,
    ratio_sweep,
    spearman,
)
from .hypergraph import Simplex, SimplexRegistry, adjacent, neighbors, register_hypergraph, remove_hyperedges
from .io import dedup, load_benson, read_benson, read_native, write_native
from .laplacian import (
    assemble_lh,
    build_cross_block,
    build_incidence,
    build_lk,
    build_updown,
)
from .sir import (
    ContactNetwork,
    SirOutcome,
    SirParams,
    critical_infection_rate,
    edge_infection_prob,
    mean_affected_scale,
    run_sir,
)
from .spectral import DffConfig, SpectralDecomposition, decompose, diffusion_distance2, dff_scores, eig_sym

__version__ = "0.1.0"
