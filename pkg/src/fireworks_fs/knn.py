"""Exact brute-force KNN classification and stratified splitting.

Every tie is resolved deterministically: equal distances prefer the lower
training-row index, vote ties prefer the smallest class id. Splits shuffle
per class with a seeded generator, so a (data, spec) pair always produces
the same partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fireworks_fs import _kernels

__all__ = [
    "Dataset",
    "SplitSpec",
    "accuracy",
    "knn_predict",
    "knn_predict_batch",
    "stratified_split",
]


@dataclass
class Dataset:
    """A fully numeric classification table.

    features : (n_rows, n_features) float64 array, all finite.
    labels : (n_rows,) int64 array with values in [0, class_count).
    column_names : one name per feature column.
    class_count : number of distinct label ids.
    """

    features: np.ndarray
    labels: np.ndarray
    column_names: tuple[str, ...]
    class_count: int

    def __post_init__(self):
        self.features = np.ascontiguousarray(self.features, dtype=np.float64)
        self.labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2:
            raise ValueError("features must be a 2-D array")
        if self.labels.shape != (self.features.shape[0],):
            raise ValueError("labels must align with feature rows")
        if not np.all(np.isfinite(self.features)):
            raise ValueError("features contain non-finite values")
        self.column_names = tuple(self.column_names)
        if len(self.column_names) != self.features.shape[1]:
            raise ValueError("column_names must align with feature columns")
        if self.class_count < 1:
            raise ValueError("class_count must be positive")
        if self.labels.size and (
            self.labels.min() < 0 or self.labels.max() >= self.class_count
        ):
            raise ValueError("labels out of range for class_count")

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def take(self, indices) -> "Dataset":
        """Row subset, preserving schema."""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(
            self.features[idx], self.labels[idx], self.column_names, self.class_count
        )


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.7
    stratified: bool = True
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie strictly between 0 and 1")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def stratified_split(data: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Partition rows into train/test with per-class proportional allocation.

    The global train size is round-half-up of fraction * n_rows; per-class
    quotas are distributed by largest remainder and clamped so every class
    keeps at least one row on each side. Rows are shuffled per class with a
    generator seeded from the spec, and both outputs keep original row order.
    """
    n = data.n_rows
    if n < 2:
        raise ValueError("need at least 2 rows to split")
    if not spec.stratified:
        rng = np.random.default_rng(spec.seed)
        perm = rng.permutation(n)
        t = min(max(_round_half_up(spec.train_fraction * n), 1), n - 1)
        return data.take(np.sort(perm[:t])), data.take(np.sort(perm[t:]))

    class_rows = [np.flatnonzero(data.labels == c) for c in range(data.class_count)]
    for c, rows in enumerate(class_rows):
        if rows.size < 2:
            raise ValueError(
                f"class {c} has {rows.size} row(s); stratified split needs >= 2"
            )

    k = data.class_count
    target = min(max(_round_half_up(spec.train_fraction * n), k), n - k)
    quotas = [spec.train_fraction * rows.size for rows in class_rows]
    alloc = [int(math.floor(q)) for q in quotas]
    remainders = [q - a for q, a in zip(quotas, alloc)]
    # largest remainder first, class id breaking ties
    for c in sorted(range(k), key=lambda c: (-remainders[c], c)):
        if sum(alloc) >= target:
            break
        alloc[c] += 1
    alloc = [min(max(a, 1), class_rows[c].size - 1) for c, a in enumerate(alloc)]
    while sum(alloc) < target:
        slack = [class_rows[c].size - 1 - alloc[c] for c in range(k)]
        c = max(range(k), key=lambda c: (slack[c], -c))
        if slack[c] <= 0:
            break
        alloc[c] += 1
    while sum(alloc) > target:
        slack = [alloc[c] - 1 for c in range(k)]
        c = max(range(k), key=lambda c: (slack[c], -c))
        if slack[c] <= 0:
            break
        alloc[c] -= 1

    rng = np.random.default_rng(spec.seed)
    train_idx = []
    test_idx = []
    for c in range(k):
        perm = rng.permutation(class_rows[c])
        train_idx.append(perm[: alloc[c]])
        test_idx.append(perm[alloc[c] :])
    train = np.sort(np.concatenate(train_idx))
    test = np.sort(np.concatenate(test_idx))
    return data.take(train), data.take(test)


def predict_matrix(train_x, train_y, queries, k: int, class_count: int) -> np.ndarray:
    """Low-level KNN prediction on raw arrays; used by the wrapper loop."""
    train_x = np.ascontiguousarray(train_x, dtype=np.float64)
    queries = np.ascontiguousarray(queries, dtype=np.float64)
    train_y = np.ascontiguousarray(train_y, dtype=np.int64)
    if train_x.ndim != 2 or queries.ndim != 2:
        raise ValueError("feature arrays must be 2-D")
    if queries.shape[1] != train_x.shape[1]:
        raise ValueError("query dimensionality does not match training data")
    if not 1 <= k <= train_x.shape[0]:
        raise ValueError(f"k={k} out of range for {train_x.shape[0]} training rows")
    return np.asarray(
        _kernels.knn_predict_batch(train_x, train_y, queries, int(k), int(class_count)),
        dtype=np.int64,
    )


def knn_predict_batch(train: Dataset, queries, k: int) -> np.ndarray:
    return predict_matrix(train.features, train.labels, queries, k, train.class_count)


def knn_predict(train: Dataset, query, k: int) -> int:
    query = np.asarray(query, dtype=np.float64).reshape(1, -1)
    return int(knn_predict_batch(train, query, k)[0])


def accuracy(predictions, truth) -> float:
    """Percentage of exact label matches, in [0, 100]."""
    predictions = np.asarray(predictions)
    truth = np.asarray(truth)
    if predictions.shape != truth.shape:
        raise ValueError("prediction/truth length mismatch")
    if predictions.size == 0:
        raise ValueError("cannot score an empty prediction set")
    return float(np.mean(predictions == truth) * 100.0)
