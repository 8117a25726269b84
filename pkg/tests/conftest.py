"""Shared fixtures and independent oracle implementations.

The oracles here deliberately avoid the package's vectorized code paths:
they count with dicts and sum with math.log so that equality tests compare
two independent routes to the same quantity.
"""

import math
import os
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from sigcat.dataset import Dataset, load_csv

DATA_DIR = Path(os.environ.get("SIGCAT_DATA_DIR",
                               Path(__file__).resolve().parent.parent / "data"))

# files as normalized by scripts/fetch_uci.py: plain CSV, no header,
# attributes first, ground-truth label last
UCI_NAMES = ["zoo", "soybean-small", "house-votes", "breast-cancer",
             "chess", "hayes-roth", "lung-cancer", "lymphography"]


def uci_path(name):
    return DATA_DIR / f"{name}.csv"


def load_uci(name):
    """Load a normalized UCI file or skip the test if it is not on disk."""
    path = uci_path(name)
    if not path.exists():
        pytest.skip(f"UCI dataset {name!r} not available at {path}; "
                    "run scripts/fetch_uci.py to download it")
    return load_csv(path, label_column=-1)


def make_dataset(rng, n, m, q_choices=(2, 3, 4)):
    """Random dataset with every category of every attribute present."""
    qs = rng.choice(q_choices, size=m)
    cols = []
    for q in qs:
        if n >= q:
            # guarantee each category appears at least once
            col = np.concatenate([np.arange(q),
                                  rng.integers(0, q, size=n - q)])
        else:
            col = rng.integers(0, q, size=n)
        cols.append(rng.permutation(col))
    values = np.stack(cols, axis=1)
    dicts = [{f"v{i}": i for i in range(q)} for q in qs]
    decs = [[f"v{i}" for i in range(q)] for q in qs]
    return Dataset(values, qs.astype(np.int64), dicts, decs)


def noisy_groups(rng, k, per_group, m, q, noise):
    """Planted k-cluster dataset: per-group attribute patterns with a
    ``noise`` fraction of cells resampled uniformly."""
    patterns = rng.integers(0, q, size=(k, m))
    values = np.repeat(patterns, per_group, axis=0)
    flip = rng.random(values.shape) < noise
    values[flip] = rng.integers(0, q, size=int(flip.sum()))
    labels = np.repeat(np.arange(k), per_group)
    dicts = [{f"v{i}": i for i in range(q)} for _ in range(m)]
    decs = [[f"v{i}" for i in range(q)] for _ in range(m)]
    return Dataset(values, np.full(m, q, dtype=np.int64), dicts, decs), labels


def grouped_dataset(group_rows, group_sizes):
    """Dataset of identical rows repeated per group (pure clusters)."""
    rows = []
    labels = []
    for g, (row, size) in enumerate(zip(group_rows, group_sizes)):
        rows.extend([row] * size)
        labels.extend([g] * size)
    values = np.array(rows, dtype=np.int64)
    qs = values.max(axis=0) + 1
    dicts = [{f"v{i}": i for i in range(q)} for q in qs]
    decs = [[f"v{i}" for i in range(q)] for q in qs]
    return Dataset(values, qs, dicts, decs), np.array(labels)


# ---------------------------------------------------------------------------
# oracles


def oracle_counts(dataset, assignments, k):
    """Counts as plain dicts: sizes[k], freq[(k, m, q)]."""
    sizes = Counter()
    freq = Counter()
    for n_idx, a in enumerate(assignments):
        sizes[a] += 1
        for m_idx in range(dataset.n_attributes):
            freq[(a, m_idx, int(dataset.values[n_idx, m_idx]))] += 1
    return sizes, freq


def _f(n):
    return n * math.log(n) if n > 0 else 0.0


def oracle_srs(dataset, assignments, k):
    sizes, freq = oracle_counts(dataset, assignments, k)
    total = dataset.n_attributes * sum(_f(v) for v in sizes.values())
    return total - sum(_f(v) for v in freq.values())


def oracle_srs_prime(dataset, assignments, k):
    sizes, freq = oracle_counts(dataset, assignments, k)
    total = dataset.n_attributes * sum(_f(v) for v in sizes.values())
    for kk in range(k):
        nk = sizes.get(kk, 0)
        for m_idx in range(dataset.n_attributes):
            for q in range(int(dataset.categories_per_attribute[m_idx])):
                total -= _f(nk - freq.get((kk, m_idx, q), 0))
    return total


def oracle_expected_entropy(dataset, assignments, k):
    sizes, freq = oracle_counts(dataset, assignments, k)
    total = 0.0
    for kk in range(k):
        nk = sizes.get(kk, 0)
        if nk == 0:
            continue
        for m_idx in range(dataset.n_attributes):
            for q in range(int(dataset.categories_per_attribute[m_idx])):
                c = freq.get((kk, m_idx, q), 0)
                if 0 < c:
                    total += c * math.log(c / nk)
                if c < nk:
                    total += (nk - c) * math.log((nk - c) / nk)
    return -total / dataset.n_objects


def set_partitions(n):
    """All partitions of n items as restricted-growth label tuples."""
    def rec(prefix, used):
        i = len(prefix)
        if i == n:
            yield tuple(prefix)
            return
        for lab in range(used + 1):
            prefix.append(lab)
            yield from rec(prefix, max(used, lab + 1) if lab == used else used)
            prefix.pop()
    yield from rec([], 0)


def all_bipartitions(n):
    """Every 2-cluster labeling with object 0 fixed in cluster 0, the
    single-cluster labeling included."""
    for mask in range(2 ** (n - 1)):
        labels = np.zeros(n, dtype=np.int64)
        for i in range(1, n):
            labels[i] = (mask >> (i - 1)) & 1
        yield labels
