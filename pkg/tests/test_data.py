"""Loader strictness, label mapping, round-trips, and min-max scaling."""

import numpy as np
import pytest

from fireworks_fs import (
    DataFormatError,
    Dataset,
    DatasetSpec,
    load_dataset,
    min_max_normalize,
    save_dataset,
)
from fireworks_fs.data import apply_min_max, fit_min_max


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_load_basic_comma_label_last(tmp_path):
    path = write(tmp_path, "1.0,2.0,a\n3.0,4.0,b\n5.5,6.5,a\n")
    data = load_dataset(DatasetSpec(path))
    assert data.n_rows == 3 and data.n_features == 2 and data.class_count == 2
    # labels map by sorted raw string: a -> 0, b -> 1
    np.testing.assert_array_equal(data.labels, [0, 1, 0])
    np.testing.assert_allclose(data.features, [[1, 2], [3, 4], [5.5, 6.5]])
    assert data.column_names == ("f1", "f2")


def test_load_label_first_and_whitespace(tmp_path):
    path = write(tmp_path, "yes 1 2\nno 3 4\n")
    data = load_dataset(DatasetSpec(path, label_column="first"))
    np.testing.assert_array_equal(data.labels, [1, 0])
    np.testing.assert_allclose(data.features, [[1, 2], [3, 4]])


def test_load_named_label_column_needs_header(tmp_path):
    path = write(tmp_path, "x,y,cls\n1,2,a\n3,4,b\n")
    data = load_dataset(DatasetSpec(path, label_column="cls", header=True))
    assert data.column_names == ("x", "y")
    np.testing.assert_array_equal(data.labels, [0, 1])

    bare = write(tmp_path, "1,2,a\n3,4,b\n", name="bare.csv")
    with pytest.raises(DataFormatError, match="needs a header"):
        load_dataset(DatasetSpec(bare, label_column="cls"))


def test_load_empty_file_rejected(tmp_path):
    path = write(tmp_path, "")
    with pytest.raises(DataFormatError, match="empty dataset"):
        load_dataset(DatasetSpec(path))


def test_load_ragged_row_named_in_error(tmp_path):
    path = write(tmp_path, "1,2,a\n3,4,5,b\n")
    with pytest.raises(DataFormatError, match="row 2 has 4 fields, expected 3"):
        load_dataset(DatasetSpec(path))


def test_load_non_numeric_cell_named_in_error(tmp_path):
    path = write(tmp_path, "1,2,a\n3,oops,b\n")
    with pytest.raises(DataFormatError, match="row 2, column 2"):
        load_dataset(DatasetSpec(path))


def test_load_expected_shape_validation(tmp_path):
    path = write(tmp_path, "1,2,a\n3,4,b\n")
    with pytest.raises(DataFormatError, match="expected 5 rows, found 2"):
        load_dataset(DatasetSpec(path, expected_rows=5))
    with pytest.raises(DataFormatError, match="expected 3 classes, found 2"):
        load_dataset(DatasetSpec(path, expected_classes=3))
    load_dataset(DatasetSpec(path, expected_rows=2, expected_features=2,
                             expected_classes=2))


def test_load_skip_rows_and_missing_file(tmp_path):
    path = write(tmp_path, "garbage preamble\n1,2,a\n3,4,b\n")
    data = load_dataset(DatasetSpec(path, skip_rows=1))
    assert data.n_rows == 2
    with pytest.raises(FileNotFoundError):
        load_dataset(DatasetSpec(str(tmp_path / "nope.csv")))


def test_save_load_round_trip(tmp_path, blobs):
    path = tmp_path / "rt.csv"
    save_dataset(blobs, path)
    again = load_dataset(DatasetSpec(str(path)))
    np.testing.assert_array_equal(again.features, blobs.features)
    np.testing.assert_array_equal(again.labels, blobs.labels)
    assert again.class_count == blobs.class_count


def test_label_mapping_stable_across_loads(tmp_path):
    path = write(tmp_path, "1,2,z\n3,4,a\n5,6,m\n")
    first = load_dataset(DatasetSpec(path))
    second = load_dataset(DatasetSpec(path))
    np.testing.assert_array_equal(first.labels, second.labels)
    # sorted raw strings: a=0, m=1, z=2
    np.testing.assert_array_equal(first.labels, [2, 0, 1])


def test_min_max_example_column():
    data = Dataset(np.array([[2.0], [4.0], [6.0]]), np.array([0, 0, 1]), ("f1",), 2)
    scaled, params = min_max_normalize(data)
    np.testing.assert_allclose(scaled.features[:, 0], [0.0, 0.5, 1.0])
    assert not params.any_constant


def test_min_max_constant_column_flagged():
    data = Dataset(np.array([[7.0], [7.0], [7.0]]), np.array([0, 0, 1]), ("f1",), 2)
    scaled, params = min_max_normalize(data)
    np.testing.assert_array_equal(scaled.features[:, 0], [0.0, 0.0, 0.0])
    assert params.any_constant


def test_train_fitted_params_pass_test_values_unclamped():
    params = fit_min_max(np.array([[0.0], [10.0]]))
    out = apply_min_max(np.array([[15.0], [-5.0]]), params)
    np.testing.assert_allclose(out[:, 0], [1.5, -0.5])


def test_normalized_train_columns_hit_unit_range():
    rng = np.random.default_rng(5)
    feats = rng.random((40, 6)) * 9 + 1
    params = fit_min_max(feats)
    scaled = apply_min_max(feats, params)
    np.testing.assert_allclose(scaled.min(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(scaled.max(axis=0), 1.0, atol=1e-12)


def test_dataset_validation():
    with pytest.raises(ValueError, match="labels out of range"):
        Dataset(np.zeros((2, 2)), np.array([0, 5]), ("a", "b"), 2)
    with pytest.raises(ValueError, match="non-finite"):
        Dataset(np.array([[np.nan, 0.0]]), np.array([0]), ("a", "b"), 1)


def test_display_name_defaults_to_stem(tmp_path):
    spec = DatasetSpec("/some/dir/spectf.csv")
    assert spec.display_name == "spectf"
    assert DatasetSpec("x.csv", name="Custom").display_name == "Custom"
