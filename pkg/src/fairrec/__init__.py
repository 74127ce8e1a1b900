"""Multidimensional fairness-aware paper selection.

Authors are profiled on five demographic features, profiles are fused per
paper, and N papers are chosen by one of three queue-based strategies that
trade venue quality against reaching the pool's demographic parity.
"""

from .errors import FairrecError
from .ingest import (
    AuthorRecord,
    Dataset,
    PaperRecord,
    ReferenceTables,
    VenueRecord,
    default_tables,
    load_dataset,
    load_reference_tables,
    validate_dataset,
    write_dataset,
)
from .metrics import (
    EvaluationReport,
    demographic_distance,
    demographic_similarity,
    diversity_gain,
    evaluate,
    evaluate_vectors,
    f_measure,
    utility,
    utility_loss_savings,
)
from .paperprofile import PaperProfile, build_paper_profiles, fuse_profiles, pd_score
from .parity import ParityVector, compute_pool_parity, parity_met, participation
from .pipeline import Pool, build_pool, run_selection
from .profiling import (
    FEATURES,
    AuthorProfile,
    FeatureVector,
    RankSplit,
    WeightMode,
    build_author_profile,
    build_author_profiles,
)
from .selection import (
    Algorithm,
    ParityRule,
    SelectionRequest,
    SelectionResult,
    multifaceted,
    overall_diversity,
    round_robin,
    select,
)
from .synth import SyntheticSpec, generate

__version__ = "0.1.0"
