"""Spectral Max Cut: eigenvector-based max cut and max cut gain solvers
with dual certificates."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    Cut,
    GraphFormatError,
    PartitionStats,
    WeightedGraph,
    evaluate_cut,
    evaluate_gain,
    greedy_cut,
    load_graph,
    make_cut,
    partition_stats,
    write_graph,
)
from .eigen import EmbeddingVector, lambda_min, rayleigh_quotient, smallest_eigvec  # noqa: E402
from .bipartite import (  # noqa: E402
    BetaReport,
    SweepResult,
    beta_exact,
    edge_expansion_exact,
    spectral_partition,
    two_threshold_sweep,
)
from .certificates import (  # noqa: E402
    DualCertificate,
    best_certificate,
    certify_upper_bound,
    primal_dual_report,
)
from .maxcut import SolveTrace, assemble_cut, recursive_spectral_cut, residual_graph  # noqa: E402
from .sparsify import SparsifyParams, sparsify  # noqa: E402
from .reduce import ReductionArtifact, lift_cut, reduce  # noqa: E402
from .gain import (  # noqa: E402
    GainResult,
    GainRoundingParams,
    check_good_rounding,
    four_threshold_spectral_cut,
    gamma_exact,
    good_rounding_expectations,
    iterated_gain_cut,
)
from .exact import maxcut_exact  # noqa: E402
from .kernels import BACKEND  # noqa: E402
