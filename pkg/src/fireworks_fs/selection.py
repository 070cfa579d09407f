"""Wrapper feature selection: continuous positions in [0,1]^d become feature
masks, scored by holdout KNN accuracy and searched with the lite fireworks
optimizer. A box-counting fractal-dimension estimate of the point cloud sets
the subset cardinality; an unconstrained mode searches free-size masks.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from fireworks_fs.data import apply_min_max, fit_min_max
from fireworks_fs.fractal import FDEstimate, ScaleGrid, estimate_fd
from fireworks_fs.knn import Dataset, SplitSpec, accuracy, predict_matrix, stratified_split
from fireworks_fs.lfwa import GenerationStats, LfwaConfig, SearchBounds, optimize

__all__ = [
    "CONSTRAINT_MODES",
    "FeatureMask",
    "ScoringConfig",
    "SelectionOutcome",
    "binarize",
    "normalized_split",
    "repair_cardinality",
    "select_features",
    "subset_fitness",
]

CONSTRAINT_MODES = ("fd", "unconstrained")


@dataclass(frozen=True)
class FeatureMask:
    """Immutable bit vector over feature columns."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("mask bits must be 0 or 1")

    @classmethod
    def from_bits(cls, bits) -> "FeatureMask":
        return cls(tuple(int(b) for b in np.asarray(bits).ravel()))

    @classmethod
    def full(cls, d: int) -> "FeatureMask":
        return cls((1,) * d)

    @classmethod
    def from_indices(cls, indices, d: int) -> "FeatureMask":
        """Build from 1-based column indices."""
        bits = [0] * d
        for i in indices:
            bits[int(i) - 1] = 1
        return cls(tuple(bits))

    @property
    def selected_indices(self) -> tuple[int, ...]:
        """Ascending 1-based indices of the selected columns."""
        return tuple(j + 1 for j, b in enumerate(self.bits) if b)

    @property
    def popcount(self) -> int:
        return sum(self.bits)

    def column_positions(self) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.bits, dtype=np.int64))


@dataclass(frozen=True)
class ScoringConfig:
    """Holdout classifier settings used to score a mask."""

    knn_k: int = 5
    train_fraction: float = 0.7
    split_seed: int = 0

    def __post_init__(self):
        if self.knn_k < 1:
            raise ValueError("knn_k must be at least 1")
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie strictly between 0 and 1")


@dataclass(frozen=True)
class SelectionOutcome:
    mask: FeatureMask
    accuracy: float
    evaluations: int
    fd_estimate: FDEstimate | None
    cardinality: int | None
    history: tuple[GenerationStats, ...]


def binarize(position) -> np.ndarray:
    """Bit j is 1 iff position_j >= 0.5."""
    position = np.asarray(position, dtype=np.float64)
    return (position >= 0.5).astype(np.int64)


def repair_cardinality(position, bits, k: int) -> np.ndarray:
    """Force popcount k by keeping the k largest activations (ties: lowest index).

    A mask that already has popcount k is returned unchanged; the top-k rule
    agrees with it by construction, because its k set bits are exactly the
    coordinates at or above the binarization threshold.
    """
    position = np.asarray(position, dtype=np.float64)
    bits = np.asarray(bits, dtype=np.int64)
    if not 1 <= k <= position.size:
        raise ValueError(f"k={k} outside [1, {position.size}]")
    if int(bits.sum()) == k:
        return bits.copy()
    top = np.argsort(-position, kind="stable")[:k]
    out = np.zeros(position.size, dtype=np.int64)
    out[top] = 1
    return out


def subset_fitness(mask: FeatureMask, train: Dataset, test: Dataset,
                   scoring: ScoringConfig) -> float:
    """Negated holdout accuracy of the classifier on the masked columns."""
    if train.column_names != test.column_names or train.class_count != test.class_count:
        raise ValueError("train/test schema mismatch")
    cols = mask.column_positions()
    if cols.size == 0:
        raise ValueError("mask selects no columns")
    preds = predict_matrix(
        train.features[:, cols], train.labels, test.features[:, cols],
        scoring.knn_k, train.class_count,
    )
    return -accuracy(preds, test.labels)


def normalized_split(data: Dataset, scoring: ScoringConfig) -> tuple[Dataset, Dataset]:
    """Stratified holdout with train-fitted min-max scaling on both sides."""
    spec = SplitSpec(train_fraction=scoring.train_fraction, seed=scoring.split_seed)
    train, test = stratified_split(data, spec)
    params = fit_min_max(train.features)
    train = replace(train, features=apply_min_max(train.features, params))
    test = replace(test, features=apply_min_max(test.features, params))
    return train, test


def select_features(data: Dataset, lfwa_config: LfwaConfig, scoring: ScoringConfig,
                    constraint_mode: str = "fd", fd_override: int | None = None,
                    fd_estimate: FDEstimate | None = None,
                    grid: ScaleGrid | None = None) -> SelectionOutcome:
    """Search [0,1]^d for the best-scoring feature mask.

    constraint_mode "fd" repairs every candidate to popcount ceil(FD), where
    the estimate comes from `fd_estimate` (if precomputed), a fresh
    box-counting fit, or is bypassed entirely by `fd_override`.
    constraint_mode "unconstrained" scores any nonempty mask and gives the
    all-zero mask the worst possible fitness (0) so the search moves on.
    """
    if constraint_mode not in CONSTRAINT_MODES:
        raise ValueError(f"constraint_mode must be one of {CONSTRAINT_MODES}")
    if data.class_count < 2:
        raise ValueError("need at least 2 classes")
    d = data.n_features

    cardinality: int | None = None
    estimate = fd_estimate
    if constraint_mode == "fd":
        if fd_override is not None:
            cardinality = int(fd_override)
        else:
            if estimate is None:
                estimate = estimate_fd(data.features, grid)
            cardinality = estimate.cardinality
        if not 1 <= cardinality <= d:
            raise ValueError(f"cardinality {cardinality} outside [1, {d}]")

    train, test = normalized_split(data, scoring)
    cache: dict[bytes, float] = {}

    def objective(position: np.ndarray) -> float:
        bits = binarize(position)
        if constraint_mode == "fd":
            bits = repair_cardinality(position, bits, cardinality)
        key = bits.tobytes()
        if key not in cache:
            if int(bits.sum()) == 0:
                cache[key] = 0.0
            else:
                cache[key] = subset_fitness(
                    FeatureMask.from_bits(bits), train, test, scoring
                )
        return cache[key]

    best, history = optimize(objective, SearchBounds(d, 0.0, 1.0), lfwa_config)

    bits = binarize(best.position)
    if constraint_mode == "fd":
        bits = repair_cardinality(best.position, bits, cardinality)
    return SelectionOutcome(
        mask=FeatureMask.from_bits(bits),
        accuracy=-best.fitness,
        evaluations=history[-1].evaluations,
        fd_estimate=estimate,
        cardinality=cardinality,
        history=tuple(history),
    )
