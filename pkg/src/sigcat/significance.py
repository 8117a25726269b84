"""Empirical significance of a partition against a randomized-null group."""

from dataclasses import dataclass, replace

import numpy as np

from .search import SearchConfig, ksigcat_run_many

__all__ = ["PValueResult", "empirical_pvalue"]


@dataclass
class PValueResult:
    """Observed-vs-null comparison for one partition.

    p_value is the plain proportion of null datasets whose locally optimal
    objective is <= the observed one; p_value_smoothed is the standard
    (r+1)/(|R|+1) guard against reporting exactly 0.
    """

    p_value: float
    p_value_smoothed: float
    null_srs: np.ndarray
    observed_srs: float


def _spawned_seeds(seed, n):
    """n child seeds derived deterministically from one base seed."""
    return np.random.SeedSequence(seed).spawn(n)


def empirical_pvalue(dataset, partition_srs, group, k, search_config=None,
                     threads=1):
    """Empirical p-value of an observed SRS against a randomized group.

    Runs the search on every null dataset in ``group`` with the same k and
    failure budget as the observed search, then reports the proportion of
    null runs whose SRS is <= ``partition_srs``. Null search seeds are
    spawned from ``search_config.seed``, so the result is deterministic and
    independent of ``threads``.
    """
    if len(group) == 0:
        raise ValueError("randomized group is empty")
    if search_config is None:
        search_config = SearchConfig(k=k)
    if search_config.k != k:
        raise ValueError(f"k={k} does not match search_config.k="
                         f"{search_config.k}")
    seeds = _spawned_seeds(search_config.seed, len(group))
    tasks = [(null_ds, replace(search_config, seed=s))
             for null_ds, s in zip(group, seeds)]
    partitions = ksigcat_run_many(tasks, threads=threads)
    null_srs = np.array([p.objective_value for p in partitions])
    r = int((null_srs <= partition_srs).sum())
    return PValueResult(
        p_value=r / len(group),
        p_value_smoothed=(r + 1) / (len(group) + 1),
        null_srs=null_srs,
        observed_srs=float(partition_srs),
    )
