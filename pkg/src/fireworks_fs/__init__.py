"""Lite fireworks optimizer with a fractal-dimension cardinality budget for
wrapper feature selection, plus the KNN scoring, data handling, and
experiment harness around it.
"""

from fireworks_fs._kernels import BACKEND as kernel_backend
from fireworks_fs.data import (
    DataFormatError,
    DatasetSpec,
    MinMaxParams,
    load_dataset,
    min_max_normalize,
    save_dataset,
)
from fireworks_fs.fractal import (
    FDEstimate,
    ScaleGrid,
    box_log_sum,
    estimate_fd,
    reduction_rate,
)
from fireworks_fs.harness import MODES, ExperimentConfig, run_experiment
from fireworks_fs.knn import (
    Dataset,
    SplitSpec,
    accuracy,
    knn_predict,
    knn_predict_batch,
    stratified_split,
)
from fireworks_fs.lfwa import (
    GenerationStats,
    Individual,
    LfwaConfig,
    ObjectiveError,
    PbestArchive,
    SearchBounds,
    average_intensity,
    elite_random_select,
    explosion_intensity,
    explosion_radius,
    gaussian_sparks,
    generate_explosion_sparks,
    map_into_bounds,
    optimize,
)
from fireworks_fs.reports import RunReport, TrialResult, emit_report, parse_records
from fireworks_fs.selection import (
    FeatureMask,
    ScoringConfig,
    SelectionOutcome,
    binarize,
    repair_cardinality,
    select_features,
    subset_fitness,
)

__version__ = "0.1.0"

__all__ = [
    "DataFormatError",
    "Dataset",
    "DatasetSpec",
    "ExperimentConfig",
    "FDEstimate",
    "FeatureMask",
    "GenerationStats",
    "Individual",
    "LfwaConfig",
    "MODES",
    "MinMaxParams",
    "ObjectiveError",
    "PbestArchive",
    "RunReport",
    "ScaleGrid",
    "ScoringConfig",
    "SearchBounds",
    "SelectionOutcome",
    "SplitSpec",
    "TrialResult",
    "accuracy",
    "average_intensity",
    "binarize",
    "box_log_sum",
    "elite_random_select",
    "emit_report",
    "estimate_fd",
    "explosion_intensity",
    "explosion_radius",
    "gaussian_sparks",
    "generate_explosion_sparks",
    "kernel_backend",
    "knn_predict",
    "knn_predict_batch",
    "load_dataset",
    "map_into_bounds",
    "min_max_normalize",
    "optimize",
    "parse_records",
    "reduction_rate",
    "repair_cardinality",
    "run_experiment",
    "save_dataset",
    "select_features",
    "stratified_split",
    "subset_fitness",
]
