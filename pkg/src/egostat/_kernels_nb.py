"""numba kernels. Mirrors ``_kernels_np`` function for function."""

import numpy as np
from numba import njit


@njit(cache=True)
def _first_above(nbrs, lo, hi, x):
    # first index in [lo, hi) with nbrs[idx] > x
    while lo < hi:
        mid = (lo + hi) >> 1
        if nbrs[mid] <= x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def triangle_counts(offsets, nbrs, rev):
    """Per-slot triangle multiplicity and per-vertex triangle count.

    Each triangle u < v < w is found exactly once, from the slot (u, v),
    by merging the tails of N(u) and N(v) above v.
    """
    n = offsets.shape[0] - 1
    mult = np.zeros(nbrs.shape[0], dtype=np.int64)
    tri = np.zeros(n, dtype=np.int64)
    for u in range(n):
        ue = offsets[u + 1]
        for s in range(offsets[u], ue):
            v = nbrs[s]
            if v <= u:
                continue
            ve = offsets[v + 1]
            i = s + 1
            j = _first_above(nbrs, offsets[v], ve, v)
            while i < ue and j < ve:
                a = nbrs[i]
                b = nbrs[j]
                if a < b:
                    i += 1
                elif a > b:
                    j += 1
                else:
                    mult[s] += 1
                    mult[rev[s]] += 1
                    mult[i] += 1
                    mult[rev[i]] += 1
                    mult[j] += 1
                    mult[rev[j]] += 1
                    tri[u] += 1
                    tri[v] += 1
                    tri[a] += 1
                    i += 1
                    j += 1
    return mult, tri


@njit(cache=True)
def ego_cross_sum(offsets, nbrs, mult):
    """Sum over triangles of ab + bc + ca, where a, b, c are the multiplicities of its edges."""
    n = offsets.shape[0] - 1
    acc = np.int64(0)
    for u in range(n):
        ue = offsets[u + 1]
        for s in range(offsets[u], ue):
            v = nbrs[s]
            if v <= u:
                continue
            ve = offsets[v + 1]
            i = s + 1
            j = _first_above(nbrs, offsets[v], ve, v)
            a = mult[s]
            while i < ue and j < ve:
                x = nbrs[i]
                y = nbrs[j]
                if x < y:
                    i += 1
                elif x > y:
                    j += 1
                else:
                    b = mult[i]
                    c = mult[j]
                    acc += a * b + b * c + c * a
                    i += 1
                    j += 1
    return acc


@njit(cache=True)
def fourclique_counts(offsets, nbrs, rev):
    """Per-slot count of edges inside the common neighbourhood of the slot's endpoints."""
    n = offsets.shape[0] - 1
    q = np.zeros(nbrs.shape[0], dtype=np.int64)
    stamp = np.full(n, -1, dtype=np.int64)
    common = np.empty(n, dtype=np.int64)
    for u in range(n):
        ue = offsets[u + 1]
        for s in range(offsets[u], ue):
            v = nbrs[s]
            if v <= u:
                continue
            # common neighbourhood of (u, v), sorted
            k = 0
            i = offsets[u]
            j = offsets[v]
            ve = offsets[v + 1]
            while i < ue and j < ve:
                a = nbrs[i]
                b = nbrs[j]
                if a < b:
                    i += 1
                elif a > b:
                    j += 1
                else:
                    common[k] = a
                    stamp[a] = s
                    k += 1
                    i += 1
                    j += 1
            cnt = 0
            for t in range(k):
                w = common[t]
                for r in range(_first_above(nbrs, offsets[w], offsets[w + 1], w), offsets[w + 1]):
                    if stamp[nbrs[r]] == s:
                        cnt += 1
            q[s] = cnt
            q[rev[s]] = cnt
    return q


@njit(cache=True)
def hop_histogram(offsets, nbrs, sources):
    """hist[h] = number of (source, target) pairs at BFS distance h >= 1."""
    n = offsets.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    hist = np.zeros(n + 1, dtype=np.int64)
    for src in sources:
        dist[src] = 0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            x = queue[head]
            head += 1
            dx = dist[x] + 1
            for r in range(offsets[x], offsets[x + 1]):
                y = nbrs[r]
                if dist[y] < 0:
                    dist[y] = dx
                    hist[dx] += 1
                    queue[tail] = y
                    tail += 1
        for t in range(tail):
            dist[queue[t]] = -1
    return hist
