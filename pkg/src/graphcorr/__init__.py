"""Correlation detection between sampled subgraphs of Gaussian Wigner graphs.

Generate independent or correlated Gaussian Wigner pairs, sample
induced subgraphs, score candidate vertex alignments under the overlap,
mean-squared-error, or likelihood-ratio kernels, detect correlation
either exhaustively or with the clique-based approximate algorithm, and
reproduce the supporting probabilistic identities and Monte Carlo
experiments.
"""

from ._core import backend_name
from .clique import (
    AlgoParams,
    CliqueMatch,
    DetectionResult,
    SeedMapping,
    detect,
    extend_mapping,
    find_seed,
    match_cliques,
    select_top,
)
from .errors import (
    DataFormatError,
    GraphCorrError,
    InfeasibleError,
    InvalidMappingError,
    InvalidParameterError,
    SampleTooSmallError,
)
from .exact import (
    Decision,
    ExactBudget,
    decide,
    enumerate_max_score,
    threshold_mse,
    threshold_overlap,
)
from .harness import (
    CliqueDetectorConfig,
    ExactDetectorConfig,
    ExperimentConfig,
    RocCurve,
    TrialRecord,
    auc,
    emit_csv,
    histogram,
    roc_points,
    run_experiment,
)
from .model import (
    GraphPairInstance,
    Hypothesis,
    Permutation,
    SampledSubgraphs,
    WeightedGraph,
    common_vertex_sets,
    dump_graph_to_edge_list,
    generate_pair,
    load_graph_from_edge_list,
    mapping_size_m,
    sample_subgraphs,
)
from .similarity import (
    MSE,
    OVERLAP,
    PartialInjection,
    SimilarityKernel,
    kernel_eval,
    mle_kernel,
    normalized_score,
    similarity_score,
)
from .theory import (
    CoreSet,
    Decomposition,
    FunctionalDigraph,
    TailCheckResult,
    build_digraph,
    core_set,
    core_set_tail_check,
    decompose,
    hypergeom_pmf,
    hypergeom_tail_bounds,
    likelihood_ratio,
    mc_component_expectation,
    mgf_mse,
    mgf_overlap,
    sample_complexity_boundary,
)

__version__ = "0.1.0"
