import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigcat.dataset import Dataset
from sigcat.randomize import generate_group, randperm_dataset, swap_dataset

from conftest import make_dataset


def column_histograms(ds):
    return [np.bincount(ds.values[:, m],
                        minlength=ds.categories_per_attribute[m])
            for m in range(ds.n_attributes)]


class TestSwap:
    def test_exactly_two_cells_differ_per_attribute(self):
        rng = np.random.default_rng(0)
        ds = make_dataset(rng, 12, 5)
        out = swap_dataset(ds, seed=3)
        for m in range(ds.n_attributes):
            changed = np.flatnonzero(out.values[:, m] != ds.values[:, m])
            assert changed.shape[0] == 2
            a, b = changed
            assert out.values[a, m] == ds.values[b, m]
            assert out.values[b, m] == ds.values[a, m]
            assert ds.values[a, m] != ds.values[b, m]

    def test_constant_attribute_unchanged(self):
        values = np.array([[0, 0], [0, 1], [0, 2]])
        ds = Dataset(values, np.array([1, 3]))
        with pytest.warns(UserWarning, match="attribute 0"):
            out = swap_dataset(ds, seed=1)
        assert np.array_equal(out.values[:, 0], values[:, 0])

    def test_histograms_preserved(self):
        rng = np.random.default_rng(1)
        for trial in range(50):
            ds = make_dataset(rng, int(rng.integers(2, 40)),
                              int(rng.integers(1, 6)))
            out = swap_dataset(ds, seed=trial)
            for h0, h1 in zip(column_histograms(ds), column_histograms(out)):
                assert np.array_equal(h0, h1)

    def test_multi_swap(self):
        rng = np.random.default_rng(2)
        ds = make_dataset(rng, 30, 3)
        out = swap_dataset(ds, seed=5, n_swaps=10)
        for h0, h1 in zip(column_histograms(ds), column_histograms(out)):
            assert np.array_equal(h0, h1)

    def test_deterministic(self):
        rng = np.random.default_rng(3)
        ds = make_dataset(rng, 20, 4)
        assert np.array_equal(swap_dataset(ds, seed=9).values,
                              swap_dataset(ds, seed=9).values)

    def test_near_constant_column_falls_back_to_scan(self):
        # one odd value in a long column: rejection sampling will often
        # exhaust its attempts, the scan fallback must still swap
        values = np.zeros((500, 1), dtype=np.int64)
        values[137, 0] = 1
        ds = Dataset(values, np.array([2]))
        out = swap_dataset(ds, seed=0)
        assert (out.values[:, 0] != values[:, 0]).sum() == 2
        assert out.values[:, 0].sum() == 1


class TestRandperm:
    def test_histograms_preserved(self):
        rng = np.random.default_rng(4)
        for trial in range(50):
            ds = make_dataset(rng, int(rng.integers(1, 40)),
                              int(rng.integers(1, 6)))
            out = randperm_dataset(ds, seed=trial)
            for h0, h1 in zip(column_histograms(ds), column_histograms(out)):
                assert np.array_equal(h0, h1)

    def test_single_object_unchanged(self):
        ds = Dataset(np.array([[0, 1]]), np.array([1, 2]))
        out = randperm_dataset(ds, seed=7)
        assert np.array_equal(out.values, ds.values)

    def test_columns_shuffled_independently(self):
        rng = np.random.default_rng(5)
        ds = make_dataset(rng, 200, 2, q_choices=(4,))
        out = randperm_dataset(ds, seed=11)
        moved = [(out.values[:, m] != ds.values[:, m]).sum() for m in (0, 1)]
        assert all(m > 0 for m in moved)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 40), st.integers(1, 5), st.integers(0, 10_000),
       st.sampled_from(["swap", "randperm"]))
def test_null_models_preserve_all_counts(n, m, seed, method):
    rng = np.random.default_rng(seed)
    ds = make_dataset(rng, n, m)
    out = swap_dataset(ds, seed) if method == "swap" \
        else randperm_dataset(ds, seed)
    assert out.n_objects == ds.n_objects
    assert out.n_attributes == ds.n_attributes
    assert np.array_equal(out.categories_per_attribute,
                          ds.categories_per_attribute)
    for h0, h1 in zip(column_histograms(ds), column_histograms(out)):
        assert np.array_equal(h0, h1)


class TestGenerateGroup:
    def test_regenerable_bit_exactly(self):
        rng = np.random.default_rng(6)
        ds = make_dataset(rng, 25, 3)
        g1 = generate_group(ds, 10, "swap", base_seed=42)
        g2 = generate_group(ds, 10, "swap", base_seed=42)
        assert len(g1) == 10
        for a, b in zip(g1, g2):
            assert np.array_equal(a.values, b.values)

    def test_members_differ(self):
        rng = np.random.default_rng(7)
        ds = make_dataset(rng, 25, 3)
        group = generate_group(ds, 5, "randperm", base_seed=1)
        distinct = {g.values.tobytes() for g in group}
        assert len(distinct) > 1

    def test_bad_arguments(self):
        rng = np.random.default_rng(8)
        ds = make_dataset(rng, 10, 2)
        with pytest.raises(ValueError):
            generate_group(ds, 0, "swap", base_seed=0)
        with pytest.raises(ValueError):
            generate_group(ds, 3, "shuffle", base_seed=0)
