"""Count-preserving randomizations of a categorical dataset.

Both generators rearrange values within each attribute column, so N, M,
every Q_m and every per-attribute category histogram are preserved exactly.
``swap_dataset`` exchanges one pair of differing values per attribute
(mostly keeping structure); ``randperm_dataset`` permutes each column
uniformly (destroying structure).
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = ["RandomizedGroup", "swap_dataset", "randperm_dataset",
           "generate_group"]

_REJECTION_ATTEMPTS = 128


@dataclass
class RandomizedGroup:
    """A reproducible collection of null datasets."""

    datasets: list
    method: str
    base_seed: object
    n_swaps: int = 1

    def __len__(self):
        return len(self.datasets)

    def __iter__(self):
        return iter(self.datasets)


def _swap_column(col, rng):
    """Swap one uniformly chosen pair of positions with differing values.

    Rejection-samples position pairs, falling back to an explicit scan for
    near-constant columns. Returns False when the column has fewer than two
    distinct values (left unchanged).
    """
    n = col.shape[0]
    if n < 2 or (col == col[0]).all():
        return False
    for _ in range(_REJECTION_ATTEMPTS):
        a, b = rng.integers(0, n, size=2)
        if col[a] != col[b]:
            col[a], col[b] = col[b], col[a]
            return True
    a = int(rng.integers(0, n))
    others = np.flatnonzero(col != col[a])
    b = int(others[rng.integers(0, others.shape[0])])
    col[a], col[b] = col[b], col[a]
    return True


def swap_dataset(dataset, seed, n_swaps=1):
    """Randomized copy: per attribute, ``n_swaps`` value-pair exchanges.

    Each attribute is treated independently; a swap always exchanges two
    distinct values, so with n_swaps=1 exactly two cells per swappable
    attribute differ from the input. Attributes with a single distinct
    value are left unchanged with a warning.
    """
    rng = np.random.default_rng(seed)
    values = dataset.values.copy()
    for m in range(dataset.n_attributes):
        col = values[:, m]
        for _ in range(n_swaps):
            if not _swap_column(col, rng):
                warnings.warn(f"attribute {m} has no two distinct values; "
                              "left unchanged")
                break
    return dataset.with_values(values)


def randperm_dataset(dataset, seed):
    """Randomized copy: each attribute column independently permuted."""
    rng = np.random.default_rng(seed)
    values = dataset.values.copy()
    for m in range(dataset.n_attributes):
        values[:, m] = values[rng.permutation(dataset.n_objects), m]
    return dataset.with_values(values)


def generate_group(dataset, size, method, base_seed, n_swaps=1):
    """Generate ``size`` independent null datasets.

    Per-dataset seeds are spawned deterministically from ``base_seed``, so
    the same call regenerates the group bit-exactly.
    """
    if size < 1:
        raise ValueError(f"group size must be >= 1, got {size}")
    if method == "swap":
        make = lambda s: swap_dataset(dataset, s, n_swaps=n_swaps)
    elif method == "randperm":
        make = lambda s: randperm_dataset(dataset, s)
    else:
        raise ValueError(f"unknown randomization method {method!r}")
    seeds = np.random.SeedSequence(base_seed).spawn(size)
    return RandomizedGroup([make(s) for s in seeds], method, base_seed,
                           n_swaps)
