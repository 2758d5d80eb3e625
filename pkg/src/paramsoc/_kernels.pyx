# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_kernels_py`` for the reference semantics.

Bitmask arguments are ``uint64`` arrays, so callers must route instances
with more than 63 alternatives or agents to the pure-Python backend.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long)

BACKEND = "cython"


cdef inline bint _next_comb(int64_t* idx, int k, int m):
    cdef int i = k - 1
    cdef int j
    while i >= 0 and idx[i] == m - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, k):
        idx[j] = idx[j - 1] + 1
    return True


def cc_best(const int64_t[:, ::1] cost, int m, int k):
    cdef int n = cost.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] idx_arr = np.arange(k, dtype=np.int64)
    cdef int64_t* idx = <int64_t*> idx_arr.data
    cdef int64_t best = -1, total, low
    cdef int v, j
    best_comm = None
    while True:
        total = 0
        for v in range(n):
            low = cost[v, idx[0]]
            for j in range(1, k):
                if cost[v, idx[j]] < low:
                    low = cost[v, idx[j]]
            total += low
            if best >= 0 and total >= best:
                break
        if best < 0 or total < best:
            best = total
            best_comm = tuple(int(idx[j]) for j in range(k))
        if not _next_comb(idx, k, m):
            break
    return int(best), best_comm


def mav_best(const uint64_t[::1] masks, const int64_t[::1] offsets, int m, int k):
    cdef int n = masks.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] idx_arr = np.arange(k, dtype=np.int64)
    cdef int64_t* idx = <int64_t*> idx_arr.data
    cdef int64_t best = -1, worst, d
    cdef uint64_t w
    cdef int v, j
    best_comm = None
    while True:
        w = 0
        for j in range(k):
            w |= (<uint64_t> 1) << idx[j]
        worst = 0
        for v in range(n):
            d = offsets[v] + __builtin_popcountll(masks[v] ^ w)
            if d > worst:
                worst = d
                if best >= 0 and worst >= best:
                    break
        if best < 0 or worst < best:
            best = worst
            best_comm = tuple(int(idx[j]) for j in range(k))
        if not _next_comb(idx, k, m):
            break
    return int(best), best_comm


def pav_best(const uint64_t[::1] masks, const int64_t[::1] weights, int m, int k):
    cdef int n = masks.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] idx_arr = np.arange(k, dtype=np.int64)
    cdef int64_t* idx = <int64_t*> idx_arr.data
    cdef int64_t best = -1, total
    cdef uint64_t w
    cdef int v, j
    best_comm = None
    while True:
        w = 0
        for j in range(k):
            w |= (<uint64_t> 1) << idx[j]
        total = 0
        for v in range(n):
            total += weights[__builtin_popcountll(masks[v] & w)]
        if best < 0 or total > best:
            best = total
            best_comm = tuple(int(idx[j]) for j in range(k))
        if not _next_comb(idx, k, m):
            break
    return int(best), best_comm


cdef inline int64_t _value(int kind, int n, const int64_t[:, ::1] util,
                           const uint64_t[::1] friends, int agent, uint64_t mask):
    cdef int64_t total = 0, f, e
    cdef int j
    if kind == 0:
        for j in range(n):
            if j != agent and (mask >> j) & 1:
                total += util[agent, j]
        return total
    f = __builtin_popcountll(mask & friends[agent])
    e = __builtin_popcountll(mask) - 1 - f
    if kind == 1:
        return f * n + (n - 1 - e)
    return (n - 1 - e) * n + f


def coalition_value(int kind, int n, const int64_t[:, ::1] util,
                    const uint64_t[::1] friends, int agent, uint64_t mask):
    return int(_value(kind, n, util, friends, agent, mask))


def first_blocking(int kind, int n, const int64_t[:, ::1] util, const uint64_t[::1] friends,
                   const int64_t[::1] current, const int64_t[::1] candidates,
                   bint weak, int min_size, int max_size):
    cdef int c = candidates.shape[0]
    cdef int size, j, a
    cdef uint64_t mask
    cdef int64_t val
    cdef bint ok, strict_seen
    cdef cnp.ndarray[int64_t, ndim=1] idx_arr
    cdef int64_t* idx
    if min_size < 1:
        min_size = 1
    if max_size > c:
        max_size = c
    for size in range(min_size, max_size + 1):
        idx_arr = np.arange(size, dtype=np.int64)
        idx = <int64_t*> idx_arr.data
        while True:
            mask = 0
            for j in range(size):
                mask |= (<uint64_t> 1) << candidates[idx[j]]
            ok = True
            strict_seen = False
            for j in range(size):
                a = <int> candidates[idx[j]]
                val = _value(kind, n, util, friends, a, mask)
                if val > current[a]:
                    strict_seen = True
                elif val < current[a] or not weak:
                    ok = False
                    break
            if ok and strict_seen:
                return int(mask)
            if not _next_comb(idx, size, c):
                break
    return -1
