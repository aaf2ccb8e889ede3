"""Integrative sparse SVD biclustering with stability selection."""

from ._core import (
    Bicluster,
    BiclusterModel,
    FitConfig,
    GroundTruth,
    InputError,
    MetricsReport,
    NumericError,
    SparseLayer,
    assign_unclustered,
    count_unclustered,
    deflate,
    f_score,
    fit,
    fp_fn_rates,
    generate_outlier_scenario,
    generate_scenario1,
    generate_scenario2,
    jaccard,
    leading_triplet,
    model_biclusters,
    proportions_of_variation,
    recovery,
    relevance,
    score_model,
    select_num_biclusters,
    soft_threshold,
)

__all__ = [
    "Bicluster",
    "BiclusterModel",
    "FitConfig",
    "GroundTruth",
    "InputError",
    "MetricsReport",
    "NumericError",
    "SparseLayer",
    "assign_unclustered",
    "count_unclustered",
    "deflate",
    "f_score",
    "fit",
    "fp_fn_rates",
    "generate_outlier_scenario",
    "generate_scenario1",
    "generate_scenario2",
    "jaccard",
    "leading_triplet",
    "model_biclusters",
    "proportions_of_variation",
    "recovery",
    "relevance",
    "score_model",
    "select_num_biclusters",
    "soft_threshold",
]

__version__ = "0.1.0"
