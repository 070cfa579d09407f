# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: brute-force KNN voting and box-occupancy counting.

Semantics must stay in lockstep with ``fireworks_fs._kernels.fallback``:
same summation order for distances, neighbour ties to the lower training-row
index, vote ties to the smallest class id, exact integer box counts.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport ceil, floor

cnp.import_array()


def knn_predict_batch(double[:, ::1] train_x, long long[::1] train_y,
                      double[:, ::1] queries, Py_ssize_t k, Py_ssize_t n_classes):
    cdef Py_ssize_t n_t = train_x.shape[0]
    cdef Py_ssize_t n_d = train_x.shape[1]
    cdef Py_ssize_t n_q = queries.shape[0]
    if queries.shape[1] != n_d:
        raise ValueError("query dimensionality does not match training data")
    if k < 1 or k > n_t:
        raise ValueError("k out of range")

    out = np.empty(n_q, dtype=np.int64)
    cdef long long[::1] out_v = out
    best_d_arr = np.empty(k, dtype=np.float64)
    best_i_arr = np.empty(k, dtype=np.int64)
    votes_arr = np.zeros(n_classes, dtype=np.int64)
    cdef double[::1] best_d = best_d_arr
    cdef long long[::1] best_i = best_i_arr
    cdef long long[::1] votes = votes_arr

    cdef Py_ssize_t qi, t, j, m, pos, c, best_c
    cdef double s, diff
    for qi in range(n_q):
        m = 0
        for t in range(n_t):
            s = 0.0
            for j in range(n_d):
                diff = queries[qi, j] - train_x[t, j]
                s += diff * diff
            if m < k:
                pos = m
                m += 1
            elif s < best_d[k - 1]:
                # strict: an equal distance keeps the earlier (lower) index
                pos = k - 1
            else:
                continue
            while pos > 0 and s < best_d[pos - 1]:
                best_d[pos] = best_d[pos - 1]
                best_i[pos] = best_i[pos - 1]
                pos -= 1
            best_d[pos] = s
            best_i[pos] = t
        for c in range(n_classes):
            votes[c] = 0
        for pos in range(k):
            votes[train_y[best_i[pos]]] += 1
        best_c = 0
        for c in range(1, n_classes):
            if votes[c] > votes[best_c]:
                best_c = c
        out_v[qi] = best_c
    return out


def box_sum_sq(double[:, ::1] points, double r):
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t d = points.shape[1]
    cdef long long n_cells = <long long>ceil(1.0 / r)

    idx_arr = np.empty((n, d), dtype=np.int64)
    cdef long long[:, ::1] idx = idx_arr
    cdef Py_ssize_t i, j
    cdef long long c
    for i in range(n):
        for j in range(d):
            c = <long long>floor(points[i, j] / r)
            if c < 0:
                c = 0
            if c >= n_cells:
                c = n_cells - 1
            idx[i, j] = c

    # group identical rows: sort by a 64-bit row hash, then verify runs
    # exactly so hash collisions cannot change the counts
    hash_arr = np.empty(n, dtype=np.uint64)
    cdef unsigned long long[::1] hashes = hash_arr
    cdef unsigned long long h
    for i in range(n):
        h = 14695981039346656037ULL
        for j in range(d):
            h = (h ^ <unsigned long long>idx[i, j]) * 1099511628211ULL
        hashes[i] = h

    order_arr = np.ascontiguousarray(np.argsort(hash_arr, kind="stable"), dtype=np.int64)
    cdef long long[::1] order = order_arr
    rep_arr = np.empty(n, dtype=np.int64)
    cnt_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] rep = rep_arr
    cdef long long[::1] cnt = cnt_arr

    cdef long long total = 0
    cdef Py_ssize_t start, stop, g, n_groups, row
    cdef bint same
    cdef Py_ssize_t pos = 0
    while pos < n:
        start = pos
        pos += 1
        while pos < n and hashes[order[pos]] == hashes[order[start]]:
            pos += 1
        stop = pos
        n_groups = 0
        for i in range(start, stop):
            row = order[i]
            same = False
            for g in range(n_groups):
                same = True
                for j in range(d):
                    if idx[row, j] != idx[rep[g], j]:
                        same = False
                        break
                if same:
                    cnt[g] += 1
                    break
            if not same:
                rep[n_groups] = row
                cnt[n_groups] = 1
                n_groups += 1
        for g in range(n_groups):
            total += cnt[g] * cnt[g]
    return int(total)
