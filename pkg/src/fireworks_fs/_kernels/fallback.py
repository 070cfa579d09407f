"""Pure-numpy kernels, used when the compiled extension is unavailable.

Tie rules and rounding must stay in lockstep with ``_core.pyx``: distances
are accumulated one dimension at a time (same order, no FMA), neighbour ties
go to the lower training-row index, vote ties to the smallest class id, and
box counts are exact integers.
"""

import math

import numpy as np


def knn_predict_batch(train_x, train_y, queries, k, n_classes):
    train_x = np.ascontiguousarray(train_x, dtype=np.float64)
    queries = np.ascontiguousarray(queries, dtype=np.float64)
    train_y = np.ascontiguousarray(train_y, dtype=np.int64)
    n_q = queries.shape[0]
    n_t = train_x.shape[0]
    dist = np.zeros((n_q, n_t), dtype=np.float64)
    # dimension-by-dimension accumulation mirrors the compiled loop exactly
    for j in range(train_x.shape[1]):
        diff = queries[:, j, None] - train_x[None, :, j]
        dist += diff * diff
    # stable argsort resolves equal distances by training-row index
    order = np.argsort(dist, axis=1, kind="stable")[:, :k]
    out = np.empty(n_q, dtype=np.int64)
    for i in range(n_q):
        votes = np.bincount(train_y[order[i]], minlength=n_classes)
        out[i] = int(np.argmax(votes))
    return out


def box_sum_sq(points, r):
    points = np.ascontiguousarray(points, dtype=np.float64)
    n_cells = int(math.ceil(1.0 / r))
    idx = np.floor(points / r).astype(np.int64)
    np.clip(idx, 0, n_cells - 1, out=idx)
    _, counts = np.unique(idx, axis=0, return_counts=True)
    return int(np.sum(counts.astype(np.int64) ** 2))
