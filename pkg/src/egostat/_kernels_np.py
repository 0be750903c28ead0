"""Vectorised numpy kernels; the fallback when numba is disabled.

Triangles are listed explicitly in bounded chunks: every slot (u, v) with
u < v is expanded against the neighbours of v above v, and each candidate w
is kept when the key (u, w) exists in the sorted slot-key array.
"""

import numpy as np

# candidate (u, v, w) wedges materialised per chunk
CHUNK = 1 << 22


def _gather(starts, lens):
    """Slot indices ``starts[i] + 0..lens[i]-1`` for every i, concatenated."""
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    owner = np.repeat(np.arange(len(lens)), lens)
    first = np.cumsum(lens) - lens
    return starts[owner] + (np.arange(total) - first[owner]), owner


def _split(weights, budget):
    """Index boundaries splitting ``weights`` into runs of total <= budget (at least one item each)."""
    cum = np.cumsum(weights)
    bounds = [0]
    while bounds[-1] < len(weights):
        base = cum[bounds[-1] - 1] if bounds[-1] else 0
        nxt = int(np.searchsorted(cum, base + budget, side="right"))
        bounds.append(max(nxt, bounds[-1] + 1))
    return bounds


def _slot_keys(offsets, nbrs):
    n = len(offsets) - 1
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(offsets))
    return src, src * max(n, 1) + nbrs


def iter_triangles(offsets, nbrs):
    """Yield chunks ``(s_uv, s_uw, s_vw, u, v, w)`` covering every triangle u < v < w once."""
    n = len(offsets) - 1
    src, keys = _slot_keys(offsets, nbrs)
    below = np.bincount(src[nbrs < src], minlength=n)
    hi_start = offsets[:-1] + below
    hi_len = offsets[1:] - hi_start
    upper = np.flatnonzero(src < nbrs)
    if len(upper) == 0:
        return
    work = hi_len[nbrs[upper]]
    bounds = _split(work, CHUNK)
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        s_uv = upper[lo:hi]
        v = nbrs[s_uv]
        s_vw, owner = _gather(hi_start[v], hi_len[v])
        if len(s_vw) == 0:
            continue
        s_uv = s_uv[owner]
        u = src[s_uv]
        w = nbrs[s_vw]
        want = u * n + w
        pos = np.searchsorted(keys, want)
        pos[pos == len(keys)] = 0
        hit = keys[pos] == want
        yield s_uv[hit], pos[hit], s_vw[hit], u[hit], nbrs[s_uv[hit]], w[hit]


def triangle_counts(offsets, nbrs, rev):
    n = len(offsets) - 1
    mult = np.zeros(len(nbrs), dtype=np.int64)
    tri = np.zeros(n, dtype=np.int64)
    for s_uv, s_uw, s_vw, u, v, w in iter_triangles(offsets, nbrs):
        slots = np.concatenate((s_uv, s_uw, s_vw))
        mult += np.bincount(slots, minlength=len(nbrs))
        mult += np.bincount(rev[slots], minlength=len(nbrs))
        tri += np.bincount(np.concatenate((u, v, w)), minlength=n)
    return mult, tri


def ego_cross_sum(offsets, nbrs, mult):
    acc = 0
    for s_uv, s_uw, s_vw, *_ in iter_triangles(offsets, nbrs):
        a, b, c = mult[s_uv], mult[s_uw], mult[s_vw]
        acc += int((a * b + b * c + c * a).sum())
    return acc


def fourclique_counts(offsets, nbrs, rev):
    # every 4-clique through edge e contains exactly two triangles through e,
    # so q_e = (sum over triangles t containing e of K4(t)) / 2
    n = len(offsets) - 1
    _, keys = _slot_keys(offsets, nbrs)
    deg = np.diff(offsets)
    twice = np.zeros(len(nbrs), dtype=np.int64)
    for s_uv, s_uw, s_vw, u, v, w in iter_triangles(offsets, nbrs):
        tri = np.column_stack((u, v, w))
        pick = np.argmin(deg[tri], axis=1)
        rows = np.arange(len(tri))
        piv = tri[rows, pick]
        o1 = tri[rows, (pick + 1) % 3]
        o2 = tri[rows, (pick + 2) % 3]
        k4 = np.zeros(len(tri), dtype=np.int64)
        bounds = _split(deg[piv], CHUNK)
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            p = piv[lo:hi]
            cand, owner = _gather(offsets[p], deg[p])
            x = nbrs[cand]
            ok = np.ones(len(x), dtype=bool)
            for other in (o1[lo:hi][owner], o2[lo:hi][owner]):
                want = other * n + x
                pos = np.searchsorted(keys, want)
                pos[pos == len(keys)] = 0
                ok &= keys[pos] == want
            k4[lo:hi] = np.bincount(owner[ok], minlength=hi - lo)
        slots = np.concatenate((s_uv, s_uw, s_vw))
        weights = np.concatenate((k4, k4, k4))
        twice += np.bincount(slots, weights=weights, minlength=len(nbrs)).astype(np.int64)
        twice += np.bincount(rev[slots], weights=weights, minlength=len(nbrs)).astype(np.int64)
    return twice // 2


def hop_histogram(offsets, nbrs, sources):
    n = len(offsets) - 1
    deg = np.diff(offsets)
    hist = np.zeros(n + 1, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    for src in sources:
        seen[:] = False
        seen[src] = True
        frontier = np.array([src], dtype=np.int64)
        h = 0
        while len(frontier):
            h += 1
            slots, _ = _gather(offsets[frontier], deg[frontier])
            cand = nbrs[slots]
            cand = np.unique(cand[~seen[cand]])
            seen[cand] = True
            hist[h] += len(cand)
            frontier = cand
    return hist
