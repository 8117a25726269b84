"""Cluster-number estimation: modified Gap statistic, BIC, and BKPlot.

All three selectors consume locally optimal SRS values over a k sweep. The
Gap route additionally searches every null dataset of a randomized group at
every k; BIC penalizes SRS with the parameter count k*Q; BKPlot looks for
the sharpest knee via the second-order difference of SRS across k.
"""

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .search import SearchConfig, ksigcat_run, ksigcat_run_many

__all__ = [
    "KRecord",
    "EstimationReport",
    "gap_profile",
    "gap_star_select",
    "bic_select",
    "bkplot_select",
    "estimate_clusters",
]

_OBSERVED_TAG = 0
_NULL_TAG = 1


@dataclass
class KRecord:
    """Per-k scores; fields stay None when the method was not run."""

    k: int
    srs_observed: float = None
    null_srs_mean: float = None
    null_srs_sd: float = None
    gap: float = None
    gap_star_score: float = None
    bic: float = None
    bkplot_b: float = None


@dataclass
class EstimationReport:
    records: list = field(default_factory=list)
    selected: dict = field(default_factory=dict)

    def record_for(self, k):
        for rec in self.records:
            if rec.k == k:
                return rec
        raise KeyError(k)

    def to_dict(self):
        return {
            "records": [vars(r).copy() for r in self.records],
            "selected": dict(self.selected),
        }


def _seed_for(base_seed, *key):
    """Deterministic child seed for a tagged position in the sweep."""
    return np.random.SeedSequence(entropy=base_seed, spawn_key=key)


def _observed_srs(dataset, ks, config, threads=1):
    """Locally optimal SRS for each k in ``ks`` (one seeded run per k)."""
    tasks = [(dataset, replace(config, k=k,
                               seed=_seed_for(config.seed, _OBSERVED_TAG, k)))
             for k in ks]
    parts = ksigcat_run_many(tasks, threads=threads)
    return {k: p.objective_value for k, p in zip(ks, parts)}


def gap_profile(dataset, group, k_max, search_config, threads=1,
                observed=None):
    """Gap(k) and null-SRS spread for k in [2, k_max].

    Gap(k) = mean over the group of SRS(X', pi'(k)) - SRS(X, pi*(k)); the
    spread is the sample standard deviation (ddof=1) of the null SRS values,
    NaN when the group has a single member.
    """
    if k_max < 2:
        raise ValueError(f"k_max must be >= 2, got {k_max}")
    if len(group) == 0:
        raise ValueError("randomized group is empty")
    ks = list(range(2, k_max + 1))
    if observed is None:
        observed = _observed_srs(dataset, ks, search_config, threads)
    tasks = [
        (null_ds, replace(search_config, k=k,
                          seed=_seed_for(search_config.seed, _NULL_TAG, k, r)))
        for k in ks for r, null_ds in enumerate(group)
    ]
    parts = ksigcat_run_many(tasks, threads=threads)
    null_values = np.array([p.objective_value for p in parts])
    null_values = null_values.reshape(len(ks), len(group))

    records = []
    for i, k in enumerate(ks):
        nulls = null_values[i]
        sd = float(nulls.std(ddof=1)) if len(group) > 1 else math.nan
        records.append(KRecord(
            k=k,
            srs_observed=float(observed[k]),
            null_srs_mean=float(nulls.mean()),
            null_srs_sd=sd,
            gap=float(nulls.mean() - observed[k]),
        ))
    return records


def gap_star_select(profile):
    """k with the largest Gap(k) / (k * SD(k)).

    Entries with zero or undefined SD are excluded with a warning; if none
    remain the profile is uninformative and a ValueError is raised. Ties go
    to the smallest k.
    """
    best_k, best_score = None, -math.inf
    for rec in profile:
        sd = rec.null_srs_sd
        if sd is None or not math.isfinite(sd) or sd <= 0.0:
            warnings.warn(f"k={rec.k}: degenerate null spread, "
                          "excluded from the modified Gap selection")
            rec.gap_star_score = math.nan
            continue
        rec.gap_star_score = rec.gap / (rec.k * sd)
        if rec.gap_star_score > best_score:
            best_k, best_score = rec.k, rec.gap_star_score
    if best_k is None:
        raise ValueError("no informative k: all null spreads degenerate")
    return best_k


def bic_select(dataset, k_max, search_config, threads=1, observed=None):
    """BIC(k) = 2*SRS(k) + k*Q*ln(M*N) over [2, k_max]; returns
    (per-k dict, argmin k)."""
    if k_max < 2:
        raise ValueError(f"k_max must be >= 2, got {k_max}")
    ks = list(range(2, k_max + 1))
    if observed is None:
        observed = _observed_srs(dataset, ks, search_config, threads)
    penalty_unit = dataset.total_categories * math.log(
        dataset.n_attributes * dataset.n_objects)
    bics = {k: 2.0 * observed[k] + k * penalty_unit for k in ks}
    k_hat = min(ks, key=lambda k: (bics[k], k))
    return bics, k_hat


def bkplot_select(dataset, k_max, search_config, threads=1, observed=None):
    """Second-order SRS difference B(k); returns (per-k dict, argmax k).

    B(k) needs SRS at k-1..k+2, so the computable range is [2, k_max-2]
    with SRS(1) taken from the trivial one-cluster partition. Ties go to
    the smallest k.
    """
    if k_max < 4:
        raise ValueError(f"k_max must be >= 4 for BKPlot, got {k_max}")
    ks = list(range(1, k_max + 1))
    if observed is None:
        observed = _observed_srs(dataset, ks, search_config, threads)
    else:
        observed = dict(observed)
        if 1 not in observed:
            observed[1] = ksigcat_run(
                dataset, replace(search_config, k=1)).objective_value
    s = {k: observed[k] - observed[k + 1] for k in range(1, k_max)}
    beta = {k: s[k] - s[k + 1] for k in range(1, k_max - 1)}
    b = {k: beta[k - 1] - beta[k] for k in range(2, k_max - 1)}
    k_hat = max(b, key=lambda k: (b[k], -k))
    return b, k_hat


def estimate_clusters(dataset, k_max, search_config, group=None, threads=1,
                      methods=("gapstar", "bic", "bkplot")):
    """Full estimation sweep sharing one batch of observed searches.

    Returns an EstimationReport whose records cover k in [1, k_max] (k=1
    appears only when BKPlot is requested) and whose ``selected`` maps each
    requested method to its chosen k.
    """
    unknown = set(methods) - {"gapstar", "bic", "bkplot"}
    if unknown:
        raise ValueError(f"unknown estimation methods: {sorted(unknown)}")
    if "gapstar" in methods and group is None:
        raise ValueError("the modified Gap method needs a randomized group")
    lo = 1 if "bkplot" in methods else 2
    ks = list(range(lo, k_max + 1))
    observed = _observed_srs(dataset, ks, search_config, threads)

    report = EstimationReport(
        records=[KRecord(k=k, srs_observed=float(observed[k])) for k in ks])

    if "gapstar" in methods:
        for rec in gap_profile(dataset, group, k_max, search_config,
                               threads=threads, observed=observed):
            target = report.record_for(rec.k)
            target.null_srs_mean = rec.null_srs_mean
            target.null_srs_sd = rec.null_srs_sd
            target.gap = rec.gap
        report.selected["gap_star_k"] = gap_star_select(
            [r for r in report.records if r.k >= 2])
    if "bic" in methods:
        bics, k_hat = bic_select(dataset, k_max, search_config,
                                 observed=observed)
        for k, v in bics.items():
            report.record_for(k).bic = v
        report.selected["bic_k"] = k_hat
    if "bkplot" in methods:
        bs, k_hat = bkplot_select(dataset, k_max, search_config,
                                  observed=observed)
        for k, v in bs.items():
            report.record_for(k).bkplot_b = v
        report.selected["bkplot_k"] = k_hat
    return report
