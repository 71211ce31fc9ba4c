"""Compiled column reduction over flat int64 arrays."""
from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def _merge(a, alen, b, blen, out):
    # symmetric difference of two sorted runs; returns length written to out
    i = j = k = 0
    while i < alen and j < blen:
        x = a[i]
        y = b[j]
        if x < y:
            out[k] = x
            i += 1
            k += 1
        elif y < x:
            out[k] = y
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < alen:
        out[k] = a[i]
        i += 1
        k += 1
    while j < blen:
        out[k] = b[j]
        j += 1
        k += 1
    return k


@numba.njit(cache=True)
def reduce_csr(indptr, indices, order):
    """Returns ``pivot_of`` (row -> column pairing it, or -1) and ``nonzero`` flags."""
    n = indptr.shape[0] - 1
    pivot_of = np.full(n, -1, np.int64)
    cleared = np.zeros(n, np.uint8)
    nonzero = np.zeros(n, np.uint8)
    start = np.zeros(n, np.int64)
    length = np.zeros(n, np.int64)
    pool = np.empty(max(16, 2 * indices.shape[0]), np.int64)
    used = 0
    cap = 64
    work = np.empty(cap, np.int64)
    other = np.empty(cap, np.int64)
    for t in range(order.shape[0]):
        j = order[t]
        if cleared[j]:
            continue
        wlen = indptr[j + 1] - indptr[j]
        if wlen > cap:
            cap = 2 * wlen
            work = np.empty(cap, np.int64)
            other = np.empty(cap, np.int64)
        work[:wlen] = indices[indptr[j]:indptr[j + 1]]
        while wlen > 0:
            k = pivot_of[work[wlen - 1]]
            if k < 0:
                break
            klen = length[k]
            if wlen + klen > cap:
                cap = 2 * (wlen + klen)
                grown = np.empty(cap, np.int64)
                grown[:wlen] = work[:wlen]
                work = grown
                other = np.empty(cap, np.int64)
            s = start[k]
            wlen = _merge(work, wlen, pool[s:s + klen], klen, other)
            work, other = other, work
        if wlen > 0:
            if used + wlen > pool.shape[0]:
                grown = np.empty(2 * (used + wlen), np.int64)
                grown[:used] = pool[:used]
                pool = grown
            pool[used:used + wlen] = work[:wlen]
            start[j] = used
            length[j] = wlen
            used += wlen
            pivot_of[work[wlen - 1]] = j
            cleared[work[wlen - 1]] = 1
            nonzero[j] = 1
    return pivot_of, nonzero
