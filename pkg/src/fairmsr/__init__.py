"""Min-sum-radii clustering under mergeable fairness constraints.

The pipeline guesses near-optimal radius profiles from a geometric grid,
places centers by repeated k-center completion under all possible "where does
the next optimal center hide" tuples, and resolves each candidate cover into
a feasible clustering (connected components, 1:1 matching, or lower-bound
flow).  Brute-force oracles verify every approximation bound at small scale.
"""

from .assign import (
    FlowNetwork,
    build_access_graph,
    components_assignment,
    lower_bound_assignment,
    one_one_assignment,
    select_mode,
)
from .constraints import cluster_feasible, clustering_feasible, color_histogram, merge_clusters
from .estimator import FairMinSumRadii
from .generate import generate_completion, generate_instance
from .instance import (
    Clustering,
    ConstraintSpec,
    Instance,
    InvalidSolutionError,
    SchemaError,
    SolutionMeta,
    msr_cost,
    read_instance,
    read_solution,
    validate_metric,
    write_instance,
    write_solution,
)
from .kcenter import CompletionInput, CompletionOutput, adjusted_distance, fft_completion
from .oracle import (
    ExactSolution,
    OracleLimitError,
    exact_completion,
    exact_matching,
    exact_msr,
)
from .profiles import (
    NoAnchorError,
    RadiusInterval,
    candidate_largest,
    enumerate_profiles,
    radius_interval,
)
from .search import CandidateCover, SolveResult, centers_and_radii, covers_all_optimal, solve

__version__ = "0.1.0"

__all__ = [
    "CandidateCover",
    "Clustering",
    "CompletionInput",
    "CompletionOutput",
    "ConstraintSpec",
    "ExactSolution",
    "FairMinSumRadii",
    "FlowNetwork",
    "Instance",
    "InvalidSolutionError",
    "NoAnchorError",
    "OracleLimitError",
    "RadiusInterval",
    "SchemaError",
    "SolutionMeta",
    "SolveResult",
    "adjusted_distance",
    "build_access_graph",
    "candidate_largest",
    "centers_and_radii",
    "cluster_feasible",
    "clustering_feasible",
    "color_histogram",
    "components_assignment",
    "covers_all_optimal",
    "enumerate_profiles",
    "exact_completion",
    "exact_matching",
    "exact_msr",
    "fft_completion",
    "generate_completion",
    "generate_instance",
    "lower_bound_assignment",
    "merge_clusters",
    "msr_cost",
    "one_one_assignment",
    "radius_interval",
    "read_instance",
    "read_solution",
    "select_mode",
    "solve",
    "validate_metric",
    "write_instance",
    "write_solution",
]
