"""Comparator algorithms runnable through the same harness."""

import numpy as np

from .search import OBJECTIVE_EE, Partition, SearchConfig, ksigcat_run

__all__ = ["kmodes_run", "entropy_search_run"]


def _hamming_to_modes(values, modes):
    """(N, K) Hamming distances from every object to every mode."""
    return (values[:, None, :] != modes[None, :, :]).sum(axis=2)


def _majority_modes(values, assign, k, modes):
    """Per-attribute majority vote per cluster; ties pick the lowest
    category index; empty clusters keep their previous mode."""
    n, m = values.shape
    for j in range(k):
        members = values[assign == j]
        if members.shape[0] == 0:
            continue
        for a in range(m):
            counts = np.bincount(members[:, a])
            modes[j, a] = counts.argmax()
    return modes


def kmodes_run(dataset, k, seed, max_iters=100):
    """Standard k-modes: nearest-mode assignment under Hamming distance,
    majority-vote mode updates.

    Initial modes are k distinct objects drawn per ``seed``; an emptied
    cluster is reseeded with the object farthest from its mode. Stops when
    assignments are stable or after ``max_iters``. The returned
    objective_value is the k-modes cost (total Hamming distance to modes).
    """
    n = dataset.n_objects
    if k > n:
        raise ValueError(f"k={k} exceeds the number of objects ({n})")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rng = np.random.default_rng(seed)
    values = dataset.values
    modes = values[rng.choice(n, size=k, replace=False)].copy()

    assign = _hamming_to_modes(values, modes).argmin(axis=1)
    for _ in range(max_iters):
        modes = _majority_modes(values, assign, k, modes)
        dist = _hamming_to_modes(values, modes)
        new_assign = dist.argmin(axis=1)
        present = np.bincount(new_assign, minlength=k)
        for j in np.flatnonzero(present == 0):
            farthest = int(dist[np.arange(n), new_assign].argmax())
            new_assign[farthest] = j
            dist[farthest, new_assign[farthest]] = 0
        if np.array_equal(new_assign, assign):
            assign = new_assign
            break
        assign = new_assign

    cost = int(_hamming_to_modes(values, modes)[np.arange(n), assign].sum())
    return Partition(assign, k, float(cost), objective="kmodes")


def entropy_search_run(dataset, k, seed, failure_budget=None):
    """Expected-entropy objective plugged into the same local search."""
    config = SearchConfig(k=k, seed=seed, objective=OBJECTIVE_EE,
                          failure_budget=failure_budget)
    return ksigcat_run(dataset, config)
