"""Delimited-text dataset loading and min-max feature scaling.

Loaders are strict: ragged rows, non-numeric feature cells, and shape
mismatches against a declared expectation are rejected with the offending
row/column named. Raw label values are mapped to contiguous integer ids by
sorting their string forms, so the mapping is stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from fireworks_fs.knn import Dataset

__all__ = [
    "DataFormatError",
    "DatasetSpec",
    "MinMaxParams",
    "apply_min_max",
    "fit_min_max",
    "load_dataset",
    "min_max_normalize",
    "save_dataset",
]


class DataFormatError(ValueError):
    """Raised when an input file cannot be interpreted as a dataset."""


@dataclass(frozen=True)
class DatasetSpec:
    """Where a dataset lives and how to read it.

    label_column is "first", "last", or a header name (header required).
    delimiter None sniffs: comma if the first data line contains one,
    otherwise arbitrary whitespace. expected_* fields, when set, are
    validated after parsing.
    """

    path: str
    label_column: str = "last"
    delimiter: str | None = None
    header: bool = False
    skip_rows: int = 0
    name: str | None = None
    expected_rows: int | None = None
    expected_features: int | None = None
    expected_classes: int | None = None

    @property
    def display_name(self) -> str:
        return self.name if self.name else Path(self.path).stem


def _split_line(line: str, delimiter: str | None) -> list[str]:
    if delimiter is None:
        return line.split()
    return [part.strip() for part in line.split(delimiter)]


def load_dataset(spec: DatasetSpec) -> Dataset:
    path = Path(spec.path)
    if not path.is_file():
        raise FileNotFoundError(f"dataset file not found: {path}")
    raw_lines = path.read_text().splitlines()
    lines = [ln.strip() for ln in raw_lines[spec.skip_rows :]]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DataFormatError(f"{path}: empty dataset")

    delimiter = spec.delimiter
    if delimiter is None and "," in lines[0]:
        delimiter = ","

    header_names: list[str] | None = None
    if spec.header:
        header_names = _split_line(lines[0], delimiter)
        lines = lines[1:]
        if not lines:
            raise DataFormatError(f"{path}: header but no data rows")

    rows = [_split_line(ln, delimiter) for ln in lines]
    width = len(rows[0])
    if width < 2:
        raise DataFormatError(f"{path}: rows need at least one feature and a label")
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DataFormatError(
                f"{path}: row {i + 1} has {len(row)} fields, expected {width}"
            )

    if spec.label_column == "first":
        label_idx = 0
    elif spec.label_column == "last":
        label_idx = width - 1
    else:
        if header_names is None:
            raise DataFormatError(
                f"{path}: label column {spec.label_column!r} needs a header row"
            )
        if spec.label_column not in header_names:
            raise DataFormatError(
                f"{path}: label column {spec.label_column!r} not in header"
            )
        label_idx = header_names.index(spec.label_column)

    raw_labels = [row[label_idx] for row in rows]
    features = np.empty((len(rows), width - 1), dtype=np.float64)
    for i, row in enumerate(rows):
        col = 0
        for j, cell in enumerate(row):
            if j == label_idx:
                continue
            try:
                features[i, col] = float(cell)
            except ValueError:
                raise DataFormatError(
                    f"{path}: row {i + 1}, column {j + 1}: "
                    f"non-numeric feature value {cell!r}"
                ) from None
            col += 1
    if not np.all(np.isfinite(features)):
        bad = np.argwhere(~np.isfinite(features))[0]
        raise DataFormatError(
            f"{path}: row {bad[0] + 1}: non-finite feature value"
        )

    classes = sorted(set(raw_labels))
    label_map = {name: idx for idx, name in enumerate(classes)}
    labels = np.array([label_map[v] for v in raw_labels], dtype=np.int64)

    if header_names is not None:
        column_names = tuple(
            name for j, name in enumerate(header_names) if j != label_idx
        )
    else:
        column_names = tuple(f"f{j}" for j in range(1, width))

    checks = (
        ("rows", spec.expected_rows, len(rows)),
        ("features", spec.expected_features, width - 1),
        ("classes", spec.expected_classes, len(classes)),
    )
    for what, expected, got in checks:
        if expected is not None and got != expected:
            raise DataFormatError(f"{path}: expected {expected} {what}, found {got}")

    return Dataset(features, labels, column_names, len(classes))


def save_dataset(data: Dataset, path, delimiter: str = ",") -> None:
    """Write features with the integer label as the last column."""
    path = Path(path)
    with path.open("w") as fh:
        for i in range(data.n_rows):
            cells = [repr(float(v)) for v in data.features[i]]
            cells.append(str(int(data.labels[i])))
            fh.write(delimiter.join(cells) + "\n")


@dataclass(frozen=True)
class MinMaxParams:
    mins: np.ndarray
    ranges: np.ndarray
    constant_columns: np.ndarray

    @property
    def any_constant(self) -> bool:
        return bool(self.constant_columns.any())


def fit_min_max(features) -> MinMaxParams:
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[0] < 1:
        raise ValueError("need a non-empty 2-D feature array")
    mins = features.min(axis=0)
    ranges = features.max(axis=0) - mins
    constant = ranges == 0.0
    # constant columns divide by 1 so they map to 0 instead of nan
    safe = np.where(constant, 1.0, ranges)
    return MinMaxParams(mins, safe, constant)


def apply_min_max(features, params: MinMaxParams) -> np.ndarray:
    features = np.asarray(features, dtype=np.float64)
    return (features - params.mins) / params.ranges


def min_max_normalize(data: Dataset) -> tuple[Dataset, MinMaxParams]:
    """Scale each column to [0, 1] by its own min/max; constants map to 0.

    Values transformed with params fitted elsewhere (e.g. a train split)
    may fall outside [0, 1]; they pass through unclamped.
    """
    params = fit_min_max(data.features)
    scaled = apply_min_max(data.features, params)
    return Dataset(scaled, data.labels, data.column_names, data.class_count), params
