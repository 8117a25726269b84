"""Categorical dataset loading and encoding.

Values are stored as dense integer category indices per attribute, with
per-attribute dictionaries mapping raw tokens to indices (first-appearance
order). Numeric matrices can be turned categorical by per-column 1-D k-means.
"""

import csv
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

__all__ = ["Dataset", "load_csv", "load_labels", "discretize_numeric"]


@dataclass(frozen=True)
class Dataset:
    """Integer-encoded categorical data matrix.

    Attributes:
        values: (N, M) array of category indices; values[n, m] in [0, Q_m).
        categories_per_attribute: length-M array of category counts Q_m.
        dictionaries: per-attribute dict mapping raw token -> category index.
        decoders: per-attribute list mapping category index -> raw token.
    """

    values: np.ndarray
    categories_per_attribute: np.ndarray
    dictionaries: list = field(default_factory=list)
    decoders: list = field(default_factory=list)

    @property
    def n_objects(self):
        return self.values.shape[0]

    @property
    def n_attributes(self):
        return self.values.shape[1]

    @property
    def total_categories(self):
        """Q = sum of Q_m over attributes."""
        return int(self.categories_per_attribute.sum())

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2:
            raise ValueError("values must be a 2-D matrix")
        object.__setattr__(self, "values", np.ascontiguousarray(v, dtype=np.int64))
        q = np.asarray(self.categories_per_attribute, dtype=np.int64)
        object.__setattr__(self, "categories_per_attribute", q)
        if q.shape != (v.shape[1],):
            raise ValueError("categories_per_attribute must have one entry per attribute")
        if v.size and ((v < 0).any() or (v >= q[None, :]).any()):
            raise ValueError("category index out of range for some attribute")

    def with_values(self, values):
        """Copy of this dataset with a new value matrix (same encoding)."""
        return replace(self, values=values)

    def decode_row(self, n):
        """Raw tokens of object n."""
        return [self.decoders[m][self.values[n, m]] for m in range(self.n_attributes)]


def _encode_columns(columns):
    """Encode raw token columns into index columns plus dictionaries."""
    n_rows = len(columns[0]) if columns else 0
    values = np.empty((n_rows, len(columns)), dtype=np.int64)
    dictionaries, decoders = [], []
    for m, col in enumerate(columns):
        mapping = {}
        decoder = []
        for i, tok in enumerate(col):
            idx = mapping.get(tok)
            if idx is None:
                idx = len(mapping)
                mapping[tok] = idx
                decoder.append(tok)
            values[i, m] = idx
        dictionaries.append(mapping)
        decoders.append(decoder)
    q = np.array([len(d) for d in dictionaries], dtype=np.int64)
    return values, q, dictionaries, decoders


def load_csv(path, delimiter=",", has_header=False, label_column=None,
             missing_token="?"):
    """Load a categorical CSV file (UCI style) into a Dataset.

    Every distinct token in a column becomes one category, indexed in
    first-appearance order; all occurrences of ``missing_token`` within an
    attribute therefore share a single dedicated category. Fields are
    stripped of surrounding whitespace.

    Args:
        path: CSV file path.
        delimiter: field separator (default comma).
        has_header: skip the first row if true.
        label_column: optional column index holding ground-truth labels;
            that column is excluded from the attributes and returned
            separately. Negative indices count from the end.
        missing_token: token that marks a missing value (kept for interface
            symmetry; encoded like any other token, i.e. one shared category
            per attribute).

    Returns:
        (Dataset, labels) where labels is a list of raw label tokens, or
        None when label_column is not given.

    Raises:
        ValueError: ragged rows, empty file, or label_column out of range.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        rows = [[f.strip() for f in row] for row in reader if row]
    if has_header and rows:
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")

    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(
                f"{path}: row {i + 1} has {len(row)} fields, expected {width}")

    col_idx = list(range(width))
    labels = None
    if label_column is not None:
        lc = label_column if label_column >= 0 else width + label_column
        if not 0 <= lc < width:
            raise ValueError(f"label_column {label_column} out of range for "
                             f"{width} columns")
        labels = [row[lc] for row in rows]
        col_idx.remove(lc)
    if not col_idx:
        raise ValueError(f"{path}: no attribute columns left")

    columns = [[row[c] for row in rows] for c in col_idx]
    values, q, dictionaries, decoders = _encode_columns(columns)
    ds = Dataset(values, q, dictionaries, decoders)
    return ds, labels


def load_labels(path):
    """Read ground-truth labels, one token per line (blank lines skipped)."""
    with open(path) as fh:
        labels = [line.strip() for line in fh if line.strip()]
    if not labels:
        raise ValueError(f"{path}: no labels")
    return labels


def _kmeans_1d(x, k, rng, max_iters=100):
    """1-D k-means with k-means++ seeding; returns integer labels.

    Convergence is declared when assignments stop changing. An empty
    cluster is repaired by seizing the point farthest from its centroid.
    """
    n = x.shape[0]
    # k-means++ seeding
    centers = np.empty(k)
    centers[0] = x[rng.integers(n)]
    d2 = (x - centers[0]) ** 2
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            centers[j:] = x[rng.integers(n, size=k - j)]
            break
        probs = d2 / total
        centers[j] = x[rng.choice(n, p=probs)]
        d2 = np.minimum(d2, (x - centers[j]) ** 2)

    labels = np.abs(x[:, None] - centers[None, :]).argmin(axis=1)
    for _ in range(max_iters):
        for j in range(k):
            mask = labels == j
            if mask.any():
                centers[j] = x[mask].mean()
            else:
                farthest = np.argmax(np.abs(x - centers[labels]))
                centers[j] = x[farthest]
                labels[farthest] = j
        new_labels = np.abs(x[:, None] - centers[None, :]).argmin(axis=1)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    return labels


def _first_appearance_relabel(labels):
    """Remap labels so they appear in increasing order of first occurrence."""
    mapping = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out, len(mapping)


def discretize_numeric(numeric_matrix, k, seed):
    """Turn a numeric matrix categorical by per-column 1-D k-means.

    Each column is clustered independently with k-means++ seeding and Lloyd
    iterations driven by a generator seeded from ``seed``; the cluster label
    of a value becomes its category index. Columns with fewer than k
    distinct values fall back to one category per distinct value (with a
    warning), so Q_m <= k always.

    Raises:
        ValueError: if k < 2 or the matrix contains non-finite entries.
    """
    x = np.asarray(numeric_matrix, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("numeric_matrix must be 2-D")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if not np.isfinite(x).all():
        raise ValueError("numeric_matrix contains non-finite values")

    rng = np.random.default_rng(seed)
    n, m = x.shape
    values = np.empty((n, m), dtype=np.int64)
    q = np.empty(m, dtype=np.int64)
    dictionaries, decoders = [], []
    for j in range(m):
        col = x[:, j]
        distinct = np.unique(col)
        if distinct.size < k:
            warnings.warn(
                f"column {j} has only {distinct.size} distinct values; "
                f"using one category per value instead of k-means with k={k}")
            labels = np.searchsorted(distinct, col)
            labels, n_labels = _first_appearance_relabel(labels)
        else:
            labels = _kmeans_1d(col, k, rng)
            labels, n_labels = _first_appearance_relabel(labels)
        values[:, j] = labels
        q[j] = n_labels
        decoder = [str(c) for c in range(n_labels)]
        decoders.append(decoder)
        dictionaries.append({tok: c for c, tok in enumerate(decoder)})
    return Dataset(values, q, dictionaries, decoders)
