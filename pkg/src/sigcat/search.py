"""Monte Carlo local search minimizing a clustering objective.

The search starts from the all-in-one-cluster partition and repeatedly
proposes moving a uniformly random object to a uniformly random other
cluster (empty clusters are legal destinations). A move is accepted only if
it strictly lowers the objective; the run stops after ``failure_budget``
consecutive rejections (default N*(K-1)). Either the SRS objective or the
expected-entropy baseline can be plugged in; both use the same machinery.

The inner loop is JIT-compiled. Proposals are drawn from the seeded
generator in fixed-size chunks so that a run is a pure function of
(dataset, config).
"""

import concurrent.futures
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .objective import ClusterCounts, counts_matrix, xlogx_table

__all__ = [
    "Partition",
    "SearchConfig",
    "SearchState",
    "StepResult",
    "ksigcat_run",
    "ksigcat_run_many",
    "local_search_step",
]

OBJECTIVE_SRS = "srs"
OBJECTIVE_EE = "ee"

_PROPOSAL_CHUNK = 8192


@dataclass
class Partition:
    """Result of one search run."""

    assignments: np.ndarray
    k_clusters: int
    objective_value: float
    objective: str = OBJECTIVE_SRS

    def __post_init__(self):
        self.assignments = np.asarray(self.assignments, dtype=np.int64)

    @property
    def n_objects(self):
        return self.assignments.shape[0]

    def cluster_sizes(self):
        return np.bincount(self.assignments, minlength=self.k_clusters)


@dataclass
class SearchConfig:
    """Parameters of one search run.

    failure_budget=None resolves to N*(K-1) at run time.
    """

    k: int
    seed: object = 0
    objective: str = OBJECTIVE_SRS
    failure_budget: int = None

    def __post_init__(self):
        if self.objective not in (OBJECTIVE_SRS, OBJECTIVE_EE):
            raise ValueError(f"unknown objective {self.objective!r}")
        if self.failure_budget is not None and self.failure_budget < 1:
            raise ValueError("failure_budget must be >= 1")


@dataclass
class StepResult:
    accepted: bool
    delta: float


@njit(cache=True, nogil=True)
def _run_proposals(values, freq, sizes, assign, xlogx, h_cache, use_ee,
                   inv_n, objs, dests, fails, budget, value):
    """Process a chunk of (object, destination-offset) proposals.

    Mutates freq/sizes/assign (and h_cache for the EE objective) in place.
    Returns (fails, value, consumed, last_delta); stops early once ``fails``
    reaches ``budget``.
    """
    m = values.shape[1]
    mf = float(m)
    qmax = freq.shape[2]
    last_delta = 0.0
    for i in range(objs.shape[0]):
        if fails >= budget:
            return fails, value, i, last_delta
        r = objs[i]
        a = assign[r]
        b = dests[i]
        if b >= a:
            b += 1
        na = sizes[a]
        nb = sizes[b]
        ha_new = 0.0
        hb_new = 0.0
        if use_ee:
            na2 = na - 1
            nb2 = nb + 1
            fna2 = xlogx[na2]
            fnb2 = xlogx[nb2]
            for j in range(m):
                qmove = values[r, j]
                for q in range(qmax):
                    ca = freq[a, j, q]
                    cb = freq[b, j, q]
                    if q == qmove:
                        ca -= 1
                        cb += 1
                    ha_new += xlogx[ca] + xlogx[na2 - ca] - fna2
                    hb_new += xlogx[cb] + xlogx[nb2 - cb] - fnb2
            delta = -(ha_new + hb_new - h_cache[a] - h_cache[b]) * inv_n
        else:
            s = 0.0
            for j in range(m):
                q = values[r, j]
                ca = freq[a, j, q]
                cb = freq[b, j, q]
                s += xlogx[ca - 1] - xlogx[ca] + xlogx[cb + 1] - xlogx[cb]
            delta = mf * (xlogx[na - 1] - xlogx[na]
                          + xlogx[nb + 1] - xlogx[nb]) - s
        last_delta = delta
        if delta < 0.0:
            sizes[a] = na - 1
            sizes[b] = nb + 1
            for j in range(m):
                q = values[r, j]
                freq[a, j, q] -= 1
                freq[b, j, q] += 1
            assign[r] = b
            if use_ee:
                h_cache[a] = ha_new
                h_cache[b] = hb_new
            value += delta
            fails = 0
        else:
            fails += 1
    return fails, value, objs.shape[0], last_delta


def _ee_cluster_terms(sizes, freq, xlogx):
    """Per-cluster sums h_k with EE = -sum_k h_k / N.

    h_k sums f(c) + f(N_k - c) - f(N_k) over all (attribute, category)
    cells; padding cells (c = 0 beyond Q_m) contribute exactly 0.
    """
    cells = freq.shape[1] * freq.shape[2]
    comp = sizes[:, None, None] - freq
    return (xlogx[freq].sum(axis=(1, 2)) + xlogx[comp].sum(axis=(1, 2))
            - cells * xlogx[sizes])


class SearchState:
    """Mutable state of one search run: counts, assignments, objective."""

    def __init__(self, dataset, assignments, k, objective=OBJECTIVE_SRS):
        self.dataset = dataset
        self.assignments = np.ascontiguousarray(assignments, dtype=np.int64)
        self.objective = objective
        self.counts = ClusterCounts.from_partition(dataset, self.assignments, k)
        if objective == OBJECTIVE_EE:
            self._h = _ee_cluster_terms(self.counts.cluster_sizes,
                                        self.counts.freq, self.counts._xlogx)
            self.value = float(-self._h.sum() / dataset.n_objects)
        elif objective == OBJECTIVE_SRS:
            self._h = np.zeros(k)
            self.value = self.counts.cached_srs
        else:
            raise ValueError(f"unknown objective {objective!r}")

    @classmethod
    def initial(cls, dataset, k, objective=OBJECTIVE_SRS):
        """All objects in cluster 0, remaining clusters empty."""
        return cls(dataset, np.zeros(dataset.n_objects, dtype=np.int64), k,
                   objective)

    def run_proposals(self, objs, dests, fails, budget):
        """Feed a proposal chunk to the kernel; returns updated bookkeeping."""
        fails, self.value, consumed, last_delta = _run_proposals(
            self.dataset.values, self.counts.freq, self.counts.cluster_sizes,
            self.assignments, self.counts._xlogx, self._h,
            self.objective == OBJECTIVE_EE, 1.0 / self.dataset.n_objects,
            objs, dests, fails, budget, self.value)
        if self.objective == OBJECTIVE_SRS:
            self.counts.cached_srs = self.value
        return fails, consumed, last_delta

    def recomputed_value(self):
        """Objective recomputed from the counts (drift-free)."""
        if self.objective == OBJECTIVE_EE:
            h = _ee_cluster_terms(self.counts.cluster_sizes, self.counts.freq,
                                  self.counts._xlogx)
            return float(-h.sum() / self.dataset.n_objects)
        return self.counts.srs_from_counts()


def local_search_step(state, rng):
    """Sample one (object, destination) proposal and apply it if improving.

    Mutates ``state`` only on acceptance; O(M) per call for the SRS
    objective. Returns StepResult(accepted, delta).
    """
    k = state.counts.k_clusters
    if k < 2:
        raise ValueError("local search needs at least 2 clusters")
    objs = rng.integers(0, state.dataset.n_objects, size=1)
    dests = rng.integers(0, k - 1, size=1)
    fails, _, last_delta = state.run_proposals(objs, dests, 0, 2)
    return StepResult(accepted=(fails == 0), delta=last_delta)


def ksigcat_run(dataset, config):
    """Locally optimal partition for ``config.k`` clusters.

    Starts from the all-in-one-cluster partition and local-searches until
    the failure budget is exhausted. Deterministic given (dataset, config).
    K=1 returns the trivial partition immediately.
    """
    n = dataset.n_objects
    k = config.k
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of objects ({n})")
    state = SearchState.initial(dataset, k, config.objective)
    if k == 1:
        return Partition(state.assignments, 1, state.recomputed_value(),
                         config.objective)

    budget = config.failure_budget
    if budget is None:
        budget = n * (k - 1)
    rng = np.random.default_rng(config.seed)
    fails = 0
    while fails < budget:
        objs = rng.integers(0, n, size=_PROPOSAL_CHUNK)
        dests = rng.integers(0, k - 1, size=_PROPOSAL_CHUNK)
        fails, _, _ = state.run_proposals(objs, dests, fails, budget)
    return Partition(state.assignments, k, state.recomputed_value(),
                     config.objective)


def ksigcat_run_many(dataset_config_pairs, threads=1):
    """Run independent searches, optionally across threads.

    Seeds are pre-assigned in the configs, so results do not depend on the
    thread count or completion order.
    """
    pairs = list(dataset_config_pairs)
    if threads is None:
        import os
        threads = os.cpu_count() or 1
    if threads <= 1 or len(pairs) <= 1:
        return [ksigcat_run(ds, cfg) for ds, cfg in pairs]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(ksigcat_run, ds, cfg) for ds, cfg in pairs]
        return [f.result() for f in futures]
