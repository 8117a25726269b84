"""Clustering objectives over per-cluster category counts.

The primary objective is the simplified ratio statistic (SRS), the monotone
transform of the likelihood-ratio test statistic comparing a K-cluster
multinomial model against a single-population one. With f(n) = n ln n and
f(0) = 0,

    SRS = M * sum_k f(N_k)  -  sum_{k,m,q} f(c_kmq)

where N_k is the size of cluster k and c_kmq counts category q of attribute
m inside cluster k. SRS >= 0, and 0 means every cluster is pure on every
attribute. Also provided: the companion statistic SRS' built from the
complement counts N_k - c_kmq, and the expected entropy EE used by the
entropy-search baseline.
"""

import numpy as np

__all__ = [
    "xlogx_table",
    "ClusterCounts",
    "srs_full",
    "srs_prime",
    "expected_entropy",
    "expected_entropy_bounds",
]


def xlogx_table(n_max):
    """Lookup table f[i] = i*ln(i) for i = 0..n_max, with f[0] = 0."""
    i = np.arange(n_max + 1, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = i * np.log(i)
    t[0] = 0.0
    return t


def _as_assignments(partition, n_objects):
    """Accept a Partition-like object or a plain label array."""
    if hasattr(partition, "assignments"):
        k = getattr(partition, "k_clusters", None)
        a = np.asarray(partition.assignments, dtype=np.int64)
    else:
        a = np.asarray(partition, dtype=np.int64)
        k = None
    if a.shape != (n_objects,):
        raise ValueError(f"partition must assign all {n_objects} objects")
    if k is None:
        k = int(a.max()) + 1 if a.size else 0
    if a.size and (a.min() < 0 or a.max() >= k):
        raise ValueError("cluster indices out of range")
    return a, int(k)


def counts_matrix(dataset, assignments, k):
    """(sizes, freq) with freq shape (K, M, Qmax); freq[k, m, q] = c_kmq."""
    n, m = dataset.values.shape
    qmax = int(dataset.categories_per_attribute.max()) if m else 0
    sizes = np.bincount(assignments, minlength=k).astype(np.int64)
    flat = (assignments[:, None] * m + np.arange(m)[None, :]) * qmax \
        + dataset.values
    freq = np.bincount(flat.ravel(), minlength=k * m * qmax)
    return sizes, freq.reshape(k, m, qmax).astype(np.int64)


class ClusterCounts:
    """Per-cluster, per-attribute category counts with a cached SRS value.

    Owns the mutable state of one search run: cluster sizes, the (K, M,
    Qmax) frequency array, and the SRS of the partition they describe.
    Moving one object between clusters costs O(M): ``srs_delta_move``
    evaluates the change without touching the counts, ``commit_move``
    applies it.
    """

    def __init__(self, k_clusters, sizes, freq, n_attributes, xlogx=None):
        self.k_clusters = int(k_clusters)
        self.cluster_sizes = sizes
        self.freq = freq
        self.n_attributes = int(n_attributes)
        n = int(sizes.sum())
        self._xlogx = xlogx if xlogx is not None else xlogx_table(n)
        self._marange = np.arange(n_attributes)
        self.cached_srs = self.srs_from_counts()

    @classmethod
    def from_partition(cls, dataset, partition, k=None):
        a, k_part = _as_assignments(partition, dataset.n_objects)
        k = k_part if k is None else int(k)
        if k < k_part:
            raise ValueError("k smaller than the largest cluster index")
        sizes, freq = counts_matrix(dataset, a, k)
        return cls(k, sizes, freq, dataset.n_attributes)

    def srs_from_counts(self):
        """Full SRS recomputation from the stored counts."""
        f = self._xlogx
        return float(self.n_attributes * f[self.cluster_sizes].sum()
                     - f[self.freq].sum())

    def _check_move(self, frm, to):
        if frm == to:
            raise ValueError("source and destination cluster are identical")
        if not (0 <= frm < self.k_clusters and 0 <= to < self.k_clusters):
            raise ValueError("cluster index out of range")
        if self.cluster_sizes[frm] < 1:
            raise ValueError(f"cluster {frm} is empty")

    def srs_delta_move(self, object_row, frm, to):
        """SRS change if the object with the given attribute values moved
        from cluster ``frm`` to cluster ``to``. Does not mutate counts."""
        self._check_move(frm, to)
        f = self._xlogx
        na = self.cluster_sizes[frm]
        nb = self.cluster_sizes[to]
        ca = self.freq[frm, self._marange, object_row]
        cb = self.freq[to, self._marange, object_row]
        delta = self.n_attributes * (f[na - 1] - f[na] + f[nb + 1] - f[nb])
        delta -= float((f[ca - 1] - f[ca] + f[cb + 1] - f[cb]).sum())
        return float(delta)

    def commit_move(self, object_row, frm, to, delta):
        """Apply a move previously evaluated with ``srs_delta_move``."""
        self._check_move(frm, to)
        self.cluster_sizes[frm] -= 1
        self.cluster_sizes[to] += 1
        self.freq[frm, self._marange, object_row] -= 1
        self.freq[to, self._marange, object_row] += 1
        self.cached_srs += delta


def srs_full(dataset, partition):
    """SRS of a partition, computed from scratch.

    ``partition`` may be a Partition or a plain array of cluster labels.
    The result is >= 0 (up to rounding), in natural-log units.
    """
    a, k = _as_assignments(partition, dataset.n_objects)
    sizes, freq = counts_matrix(dataset, a, k)
    f = xlogx_table(dataset.n_objects)
    return float(dataset.n_attributes * f[sizes].sum() - f[freq].sum())


def _real_category_mask(dataset):
    """(M, Qmax) mask of q < Q_m; padding cells are False."""
    qmax = int(dataset.categories_per_attribute.max())
    return (np.arange(qmax)[None, :]
            < dataset.categories_per_attribute[:, None])


def srs_prime(dataset, partition):
    """Companion statistic built from complement counts N_k - c_kmq.

    SRS' = M * sum_k f(N_k) - sum_{k,m,q<Q_m} f(N_k - c_kmq). Unlike SRS,
    categories absent from a cluster contribute here, so the sum must run
    over the dataset's real categories only.
    """
    a, k = _as_assignments(partition, dataset.n_objects)
    sizes, freq = counts_matrix(dataset, a, k)
    f = xlogx_table(dataset.n_objects)
    mask = _real_category_mask(dataset)
    comp = sizes[:, None, None] - freq
    return float(dataset.n_attributes * f[sizes].sum()
                 - f[comp][:, mask].sum())


def expected_entropy(dataset, partition):
    """Expected entropy EE of a partition (baseline objective).

    EE = -(1/N) * sum_{k,m,q} [ c*ln(c/N_k) + (N_k-c)*ln((N_k-c)/N_k) ]
    with 0*ln(0) = 0; lower is better and pure clusters give 0.
    """
    a, k = _as_assignments(partition, dataset.n_objects)
    sizes, freq = counts_matrix(dataset, a, k)
    mask = _real_category_mask(dataset)
    c = freq[:, mask].astype(np.float64)
    nk = np.broadcast_to(sizes[:, None, None].astype(np.float64),
                         freq.shape)[:, mask]
    comp = nk - c
    with np.errstate(divide="ignore", invalid="ignore"):
        term = np.where(c > 0, c * (np.log(c) - np.log(np.maximum(nk, 1.0))), 0.0)
        term += np.where(comp > 0,
                         comp * (np.log(comp) - np.log(np.maximum(nk, 1.0))),
                         0.0)
    return float(-term.sum() / dataset.n_objects)


def expected_entropy_bounds(dataset, partition):
    """(lower, upper) envelope of EE expressed through SRS and SRS'.

    lower = (SRS + SRS')/N - (M/N) * sum_k N_k ln N_k
    upper = (SRS + SRS')/N + (N/K - 2M)/N * sum_k N_k ln N_k

    The upper bound is only valid when the dataset has at most N/K total
    categories (N >= Q*K); the lower bound always holds.
    """
    a, k = _as_assignments(partition, dataset.n_objects)
    sizes = np.bincount(a, minlength=k).astype(np.int64)
    f = xlogx_table(dataset.n_objects)
    size_term = float(f[sizes].sum())
    n = dataset.n_objects
    m = dataset.n_attributes
    base = (srs_full(dataset, partition) + srs_prime(dataset, partition)) / n
    lower = base + (-m) * size_term / n
    upper = base + (n / k - 2 * m) * size_term / n
    return lower, upper
