"""External clustering evaluation against ground-truth labels."""

import warnings

import numpy as np
from scipy.optimize import linear_sum_assignment

__all__ = ["acc", "nmi", "contingency"]


def _encode_pair(predicted, truth):
    pred = np.asarray(predicted)
    true = np.asarray(truth)
    if pred.shape != true.shape or pred.ndim != 1:
        raise ValueError(f"label vectors must be 1-D and equally long "
                         f"(got {pred.shape} vs {true.shape})")
    if pred.size == 0:
        raise ValueError("label vectors are empty")
    _, pred_idx = np.unique(pred, return_inverse=True)
    _, true_idx = np.unique(true, return_inverse=True)
    return pred_idx, true_idx


def contingency(predicted, truth):
    """Count matrix C[i, j] = |{n : predicted=i, truth=j}| over encoded labels."""
    pred_idx, true_idx = _encode_pair(predicted, truth)
    n_pred = pred_idx.max() + 1
    n_true = true_idx.max() + 1
    c = np.zeros((n_pred, n_true), dtype=np.int64)
    np.add.at(c, (pred_idx, true_idx), 1)
    return c


def acc(predicted, truth):
    """Clustering accuracy under the best one-to-one label matching.

    Builds the contingency matrix, pads it square when the two sides have
    different label counts, and solves the maximum-weight assignment
    exactly; the result is the matched fraction of objects, in [1/N, 1].
    """
    c = contingency(predicted, truth)
    size = max(c.shape)
    padded = np.zeros((size, size), dtype=np.int64)
    padded[:c.shape[0], :c.shape[1]] = c
    rows, cols = linear_sum_assignment(padded, maximize=True)
    return float(padded[rows, cols].sum() / c.sum())


def _entropy(counts):
    """Natural-log entropy of a count vector."""
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log(p)).sum())


def nmi(predicted, truth):
    """Normalized mutual information.

    NMI = (H(pred) + H(truth) - H(pred, truth)) / ((H(pred) + H(truth)) / 2),
    clipped to [0, 1]. When both sides are single-cluster the ratio is 0/0;
    it is defined as 0 with a warning.
    """
    c = contingency(predicted, truth)
    h_pred = _entropy(c.sum(axis=1))
    h_true = _entropy(c.sum(axis=0))
    if h_pred == 0.0 and h_true == 0.0:
        warnings.warn("both partitions are single-cluster; NMI defined as 0")
        return 0.0
    h_joint = _entropy(c.ravel())
    value = (h_pred + h_true - h_joint) / ((h_pred + h_true) / 2.0)
    return float(min(max(value, 0.0), 1.0))
