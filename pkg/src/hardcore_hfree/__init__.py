"""Hard-core model, Glauber dynamics and red/blue cluster couplings on H-free graphs."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    SubdividedClawSpec,
    VertexSubset,
    boundary,
    build_graph,
    check_expansion,
    expansion_constant,
    gen_efree_block,
    gen_random_cubic_bipartite,
    gen_skewstar_witness,
    gen_subdivided_claw,
    read_edge_list,
    stretch,
    vol,
    write_edge_list,
)
from .patterns import (
    Embedding,
    Verdict,
    find_induced,
    is_subdivided_claw_free,
    verify_claw_to_s11t,
    verify_e_to_s12t,
)
from .exact import (
    CapExceeded,
    Distribution,
    HardCoreModel,
    TransitionMatrix,
    enumerate_independent_sets,
    exact_mixing_time,
    exact_w1_hamming,
    marginal,
    partition_function,
    pinned_distribution,
    transition_matrix,
    tv_distance,
)
from .sim import (
    ChainState,
    RngStream,
    glauber_step,
    monotone_coupled_run,
    product_chain_step,
    sample_stationary,
)
from .cluster import (
    Cluster,
    CoupledPair,
    check_layer_bound,
    cluster_statistics,
    couple,
    exact_coupling_pushforward,
    grow_cluster,
    w1_upper_bound,
)
from .torpid import (
    BalanceWeights,
    TorpidInstance,
    balance_weights,
    build_instance,
    conductance_ratio,
    deficient_path_count,
    max_balanced_size,
    path_transfer,
)

__all__ = [
    "Graph",
    "SubdividedClawSpec",
    "VertexSubset",
    "boundary",
    "build_graph",
    "check_expansion",
    "expansion_constant",
    "gen_efree_block",
    "gen_random_cubic_bipartite",
    "gen_skewstar_witness",
    "gen_subdivided_claw",
    "read_edge_list",
    "stretch",
    "vol",
    "write_edge_list",
    "Embedding",
    "Verdict",
    "find_induced",
    "is_subdivided_claw_free",
    "verify_claw_to_s11t",
    "verify_e_to_s12t",
    "CapExceeded",
    "Distribution",
    "HardCoreModel",
    "TransitionMatrix",
    "enumerate_independent_sets",
    "exact_mixing_time",
    "exact_w1_hamming",
    "marginal",
    "partition_function",
    "pinned_distribution",
    "transition_matrix",
    "tv_distance",
    "ChainState",
    "RngStream",
    "glauber_step",
    "monotone_coupled_run",
    "product_chain_step",
    "sample_stationary",
    "Cluster",
    "CoupledPair",
    "check_layer_bound",
    "cluster_statistics",
    "couple",
    "exact_coupling_pushforward",
    "grow_cluster",
    "w1_upper_bound",
    "BalanceWeights",
    "TorpidInstance",
    "balance_weights",
    "build_instance",
    "conductance_ratio",
    "deficient_path_count",
    "max_balanced_size",
    "path_transfer",
]
