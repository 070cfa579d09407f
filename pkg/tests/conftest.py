"""Shared fixtures: synthetic datasets and optional real-data discovery."""

import os
from pathlib import Path

import numpy as np
import pytest

from fireworks_fs import Dataset

# 0-based positions of the label-determining columns in the planted dataset
PLANTED_INFORMATIVE = (1, 5, 8)
PLANTED_COLUMNS = 10


def make_planted_dataset(rows_per_class: int = 30, seed: int = 7) -> Dataset:
    """10-column dataset whose label is an 8-way code over 3 columns.

    Each informative column sits near 0.25 or 0.75 (sigma 0.05) according to
    one bit of the class id; the other 7 columns are uniform noise. Any two
    informative columns leave class pairs merged, so only the full triple
    separates all 8 classes.
    """
    rng = np.random.default_rng(seed)
    features = []
    labels = []
    for c in range(8):
        bits = [(c >> b) & 1 for b in range(3)]
        for _ in range(rows_per_class):
            row = rng.random(PLANTED_COLUMNS)
            for col, bit in zip(PLANTED_INFORMATIVE, bits):
                row[col] = 0.25 + 0.5 * bit + rng.normal(0.0, 0.05)
            features.append(row)
            labels.append(c)
    names = tuple(f"f{j}" for j in range(1, PLANTED_COLUMNS + 1))
    return Dataset(np.array(features), np.array(labels, dtype=np.int64), names, 8)


def make_blob_dataset(rows_per_class: int = 20, classes: int = 3,
                      columns: int = 5, seed: int = 3) -> Dataset:
    """Small well-separated blobs; cheap enough for CLI round-trip tests."""
    rng = np.random.default_rng(seed)
    features = []
    labels = []
    for c in range(classes):
        center = rng.random(columns) * 0.4 + 0.3 * c
        block = center + rng.normal(0.0, 0.05, size=(rows_per_class, columns))
        features.append(block)
        labels += [c] * rows_per_class
    names = tuple(f"f{j}" for j in range(1, columns + 1))
    return Dataset(
        np.vstack(features), np.array(labels, dtype=np.int64), names, classes
    )


def make_sheet_dataset(n: int = 400, seed: int = 9) -> Dataset:
    """Points fill a 2-d sheet embedded in 5 columns, so ceil(FD) lands at 2.
    Use this where the box-counting estimate must come out meaningful; tight
    blob clusters collapse to FD 0."""
    rng = np.random.default_rng(seed)
    x = rng.random((n, 2))
    features = np.column_stack(
        [x[:, 0], x[:, 1], x[:, 0], x[:, 1], (x[:, 0] + x[:, 1]) / 2]
    )
    labels = (x[:, 0] > 0.5).astype(np.int64)
    names = tuple(f"f{j}" for j in range(1, 6))
    return Dataset(features, labels, names, 2)


@pytest.fixture(scope="session")
def planted():
    return make_planted_dataset()


@pytest.fixture(scope="session")
def blobs():
    return make_blob_dataset()


def uci_data_dir() -> Path:
    root = os.environ.get("FIREWORKS_FS_DATA_DIR")
    if root:
        return Path(root)
    return Path(__file__).resolve().parent.parent / "data" / "uci"


def uci_csv_path(name: str) -> Path:
    """Path to a prepared UCI csv, skipping the caller when it is absent."""
    path = uci_data_dir() / f"{name}.csv"
    if not path.is_file():
        pytest.skip(
            f"{path} not found; run scripts/fetch_uci_data.py on a machine "
            "with network access and point FIREWORKS_FS_DATA_DIR at the result"
        )
    return path
