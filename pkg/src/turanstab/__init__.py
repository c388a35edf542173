"""Certificates for Turan-type stability: dense graphs either contain a large
complete multipartite subgraph or are close in edit distance to ``T_r(n)``."""

from .certificate import (
    Certificate,
    HypothesisCheck,
    ParameterError,
    Params,
    analyze,
    check_hypothesis,
    verify_certificate,
)
from .cliques import JointReport, cliques_on_edge, count_cliques, joint_size
from .graph import (
    Edge,
    Graph,
    GraphError,
    apply_edits,
    complete_multipartite,
    induced_subgraph,
    parse_edge_list,
    planted_turan,
    random_graph,
    read_edge_list,
    turan_graph,
    write_edge_list,
)
from .multipartite import (
    MultipartiteWitness,
    SearchBudgetExceeded,
    SizeProfile,
    fact2_parameters,
    find_multipartite_exact,
    find_multipartite_greedy,
    theorem1_profile,
    verify_witness,
)
from .reducer import RemovalTrace, paper_threshold, run_procedure, theta
from .turan import (
    PartiteCore,
    TuranEdit,
    edit_distance_exact,
    edit_distance_heuristic,
    edits_from_partition,
    extract_partite_core,
    fact1_bounds,
    proof_chain,
    theorem_bound,
    trim_to_size,
)

__version__ = "0.1.0"
