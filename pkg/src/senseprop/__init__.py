"""Transductive sense labeling over cosine-similarity graphs.

Labels propagate from a small labeled set to the rest of the graph through
a multiplicative payoff dynamics whose fixed points are consistent labelings;
the package also ships the evaluation harness (sampling protocols, baselines,
multi-seed sweeps) and file formats used to feed it.
"""

from .dynamics import (
    ConsistencyReport,
    DynamicsConfig,
    DynamicsTrace,
    check_consistency,
    potential,
    predict,
    rd_step,
    run_dynamics,
    support_payoff,
)
from .errors import (
    DimensionMismatchError,
    FormatError,
    InputError,
    NumericalFailureError,
    SensepropError,
)
from .evaluate import (
    ExperimentResult,
    SenseEmbeddingSet,
    accuracy,
    baseline_fs,
    baseline_mfs,
    baseline_unsupervised,
    run_experiment,
)
from .graph import EmbeddingSet, SimilarityGraph, build_similarity, fuse_concat, mean_pool_unit
from .model import (
    AssignmentMatrix,
    NodeLabeling,
    SamplingPlan,
    SenseInventory,
    init_assignment,
    sample_labeled_set,
)
from .synth import make_clusters, nearest_labeled_centroid

__version__ = "0.1.0"
