import numpy as np
import pytest

from rankbench.dataio import CsvAdapterSpec, load_csv
from rankbench.errors import (
    MissingTargetColumnError,
    NonNumericFeatureError,
    ParseError,
)


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_label_encoding_by_first_appearance(tmp_path):
    path = write(tmp_path, "a,b,class\n1,2,x\n3,4,x\n5,6,y\n")
    ds = load_csv(CsvAdapterSpec(path=path, target_column="class"))
    assert ds.n_samples == 3 and ds.n_features == 2
    assert np.array_equal(ds.y, [0, 0, 1])
    assert np.array_equal(ds.X, [[1, 2], [3, 4], [5, 6]])
    assert not ds.has_ground_truth


def test_missing_target_column(tmp_path):
    path = write(tmp_path, "a,b\n1,2\n3,4\n")
    with pytest.raises(MissingTargetColumnError):
        load_csv(CsvAdapterSpec(path=path, target_column="class"))


def test_iris_shaped_file(tmp_path):
    # 150 x 4 with three classes, mirroring the classic layout
    rng = np.random.default_rng(0)
    lines = ["sl,sw,pl,pw,species"]
    for i in range(150):
        vals = rng.uniform(0.1, 8.0, 4)
        label = ["setosa", "versicolor", "virginica"][i // 50]
        lines.append(",".join(f"{v:.2f}" for v in vals) + "," + label)
    path = write(tmp_path, "\n".join(lines) + "\n", "iris.csv")
    ds = load_csv(CsvAdapterSpec(path=path, target_column="species"))
    assert ds.n_samples == 150 and ds.n_features == 4
    assert len(np.unique(ds.y)) == 3
    assert ds.name == "iris"


def test_row_order_preserved_and_reload_identical(tmp_path):
    path = write(tmp_path, "x,y\n9,a\n1,b\n5,a\n")
    a = load_csv(CsvAdapterSpec(path=path, target_column="y"))
    b = load_csv(CsvAdapterSpec(path=path, target_column="y"))
    assert np.array_equal(a.X[:, 0], [9, 1, 5])
    assert np.array_equal(a.X, b.X) and np.array_equal(a.y, b.y)


def test_non_numeric_feature_cell(tmp_path):
    path = write(tmp_path, "a,b,t\n1,oops,x\n")
    with pytest.raises(NonNumericFeatureError) as err:
        load_csv(CsvAdapterSpec(path=path, target_column="t"))
    assert err.value.row == 0 and err.value.col == 1


def test_missing_values_rejected(tmp_path):
    path = write(tmp_path, "a,b,t\n1,,x\n")
    with pytest.raises(NonNumericFeatureError):
        load_csv(CsvAdapterSpec(path=path, target_column="t"))


def test_ragged_row_rejected(tmp_path):
    path = write(tmp_path, "a,b,t\n1,2,x\n1,2\n")
    with pytest.raises(ParseError):
        load_csv(CsvAdapterSpec(path=path, target_column="t"))


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_csv(CsvAdapterSpec(path="/nonexistent/file.csv", target_column="t"))


def test_empty_file(tmp_path):
    path = write(tmp_path, "")
    with pytest.raises(ParseError):
        load_csv(CsvAdapterSpec(path=path, target_column="t"))


def test_headerless_with_index_target(tmp_path):
    path = write(tmp_path, "1,2,0\n3,4,1\n")
    ds = load_csv(CsvAdapterSpec(path=path, target_column="2", task="regression",
                                 has_header=False))
    assert ds.n_features == 2
    assert np.array_equal(ds.y, [0.0, 1.0])
    with pytest.raises(MissingTargetColumnError):
        load_csv(CsvAdapterSpec(path=path, target_column="t", has_header=False))


def test_regression_target_must_be_numeric(tmp_path):
    path = write(tmp_path, "a,t\n1,x\n2,y\n")
    with pytest.raises(ParseError):
        load_csv(CsvAdapterSpec(path=path, target_column="t", task="regression"))
