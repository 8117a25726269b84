import warnings

import numpy as np
import pytest

from sigcat.dataset import Dataset, discretize_numeric, load_csv, load_labels


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadCsv:
    def test_three_row_example(self, tmp_path):
        path = write(tmp_path, "a,x\na,y\nb,x\n")
        ds, labels = load_csv(path)
        assert labels is None
        assert ds.n_objects == 3
        assert ds.n_attributes == 2
        assert list(ds.categories_per_attribute) == [2, 2]
        assert ds.total_categories == 4
        assert ds.values.tolist() == [[0, 0], [0, 1], [1, 0]]

    def test_first_appearance_order(self, tmp_path):
        path = write(tmp_path, "c\nb\na\nb\n")
        ds, _ = load_csv(path)
        assert ds.dictionaries[0] == {"c": 0, "b": 1, "a": 2}
        assert ds.values[:, 0].tolist() == [0, 1, 2, 1]

    def test_round_trip(self, tmp_path):
        path = write(tmp_path, "a,x\na,y\nb,x\n")
        ds, _ = load_csv(path)
        assert ds.decode_row(1) == ["a", "y"]
        decoded = [ds.decode_row(n) for n in range(ds.n_objects)]
        assert decoded == [["a", "x"], ["a", "y"], ["b", "x"]]

    def test_histograms_match_tokens(self, tmp_path):
        rows = "a,x\nb,x\na,y\nc,x\na,y\n"
        ds, _ = load_csv(write(tmp_path, rows))
        raw_cols = [r.split(",") for r in rows.strip().splitlines()]
        for m in range(ds.n_attributes):
            for tok, idx in ds.dictionaries[m].items():
                raw_count = sum(1 for r in raw_cols if r[m] == tok)
                assert (ds.values[:, m] == idx).sum() == raw_count
        # sum over categories equals N per attribute
        for m in range(ds.n_attributes):
            hist = np.bincount(ds.values[:, m],
                               minlength=ds.categories_per_attribute[m])
            assert hist.sum() == ds.n_objects

    def test_label_column(self, tmp_path):
        path = write(tmp_path, "a,x,1\nb,y,2\na,y,1\n")
        ds, labels = load_csv(path, label_column=2)
        assert labels == ["1", "2", "1"]
        assert ds.n_attributes == 2
        ds2, labels2 = load_csv(path, label_column=-1)
        assert labels2 == labels
        assert np.array_equal(ds2.values, ds.values)

    def test_label_column_out_of_range(self, tmp_path):
        path = write(tmp_path, "a,x\nb,y\n")
        with pytest.raises(ValueError, match="label_column"):
            load_csv(path, label_column=5)

    def test_ragged_rows(self, tmp_path):
        path = write(tmp_path, "a,x\nb\n")
        with pytest.raises(ValueError, match="row 2"):
            load_csv(path)

    def test_empty_file(self, tmp_path):
        with pytest.raises(ValueError, match="no data"):
            load_csv(write(tmp_path, ""))

    def test_header_skipped(self, tmp_path):
        path = write(tmp_path, "colA,colB\na,x\nb,y\n")
        ds, _ = load_csv(path, has_header=True)
        assert ds.n_objects == 2

    def test_missing_token_shares_one_category(self, tmp_path):
        path = write(tmp_path, "a,?\n?,x\n?,?\nb,x\n")
        ds, _ = load_csv(path, missing_token="?")
        # both attributes get exactly one category for '?'
        assert ds.dictionaries[0]["?"] == ds.values[1, 0] == ds.values[2, 0]
        assert ds.dictionaries[1]["?"] == ds.values[0, 1] == ds.values[2, 1]
        assert list(ds.categories_per_attribute) == [3, 2]

    def test_whitespace_stripped(self, tmp_path):
        ds, _ = load_csv(write(tmp_path, "a, x\na,x\n"))
        assert ds.categories_per_attribute[1] == 1


def test_load_labels(tmp_path):
    path = tmp_path / "labels.txt"
    path.write_text("1\n2\n\n1\n")
    assert load_labels(path) == ["1", "2", "1"]
    empty = tmp_path / "empty.txt"
    empty.write_text("\n")
    with pytest.raises(ValueError):
        load_labels(empty)


class TestDatasetInvariants:
    def test_rejects_out_of_range_values(self):
        with pytest.raises(ValueError):
            Dataset(np.array([[0, 2]]), np.array([1, 2]))

    def test_with_values_keeps_encoding(self, tmp_path):
        ds, _ = load_csv(write(tmp_path, "a,x\nb,y\n"))
        ds2 = ds.with_values(ds.values[::-1].copy())
        assert ds2.dictionaries is ds.dictionaries
        assert ds2.values[0, 0] == ds.values[1, 0]


class TestDiscretizeNumeric:
    def test_two_well_separated_groups(self):
        col = np.array([[1.0], [1.1], [9.0], [9.1]])
        ds = discretize_numeric(col, k=2, seed=0)
        v = ds.values[:, 0]
        assert v[0] == v[1] and v[2] == v[3] and v[0] != v[2]
        assert ds.categories_per_attribute[0] == 2

    def test_constant_column_single_category(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            ds = discretize_numeric(np.array([[5.0]] * 4), k=2, seed=0)
        assert ds.categories_per_attribute[0] == 1
        assert any("distinct" in str(w.message) for w in caught)

    def test_fewer_distinct_than_k(self):
        col = np.array([[0.0], [1.0], [0.0], [1.0]])
        with pytest.warns(UserWarning):
            ds = discretize_numeric(col, k=3, seed=0)
        assert ds.categories_per_attribute[0] == 2

    def test_deterministic(self):
        rng = np.random.default_rng(7)
        x = rng.normal(size=(60, 3))
        a = discretize_numeric(x, k=4, seed=11)
        b = discretize_numeric(x, k=4, seed=11)
        assert np.array_equal(a.values, b.values)

    def test_q_at_most_k(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=(50, 4))
        ds = discretize_numeric(x, k=3, seed=5)
        assert (ds.categories_per_attribute <= 3).all()
        assert (ds.categories_per_attribute >= 1).all()

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError, match="k must be"):
            discretize_numeric(np.zeros((4, 2)), k=1, seed=0)
        with pytest.raises(ValueError, match="non-finite"):
            discretize_numeric(np.array([[np.nan], [1.0]]), k=2, seed=0)
