"""Synthetic graph generators used for validation."""

from __future__ import annotations

import numpy as np

from .graph import Graph, build_graph


def _pair_index_to_uv(k, n):
    # row-major index over the strict upper triangle of an n x n matrix
    k = np.asarray(k, dtype=np.int64)
    i = n - 2 - np.floor(np.sqrt(-8.0 * k + 4.0 * n * (n - 1) - 7) / 2.0 - 0.5).astype(np.int64)
    j = k + i + 1 - n * (n - 1) // 2 + (n - i) * ((n - i) - 1) // 2
    return i, j


def generate_er(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p): every unordered pair present independently with probability p.

    Draws the edge count from Binomial(n(n-1)/2, p) and then that many
    distinct pairs uniformly, which has the same law as independent coins.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = np.random.default_rng(seed)
    pairs = n * (n - 1) // 2
    m = int(rng.binomial(pairs, p)) if pairs else 0
    idx = np.sort(rng.choice(pairs, size=m, replace=False)) if m else np.empty(0, np.int64)
    u, v = _pair_index_to_uv(idx, n)
    return build_graph(np.column_stack((u, v)), n=n)


def sample_discrete_powerlaw(size, gamma, xmin, rng) -> np.ndarray:
    """Integers >= xmin with P(k) ~ k^-gamma, via the rounded continuous inverse CDF."""
    u = rng.random(size)
    return np.floor((xmin - 0.5) * (1.0 - u) ** (-1.0 / (gamma - 1.0)) + 0.5).astype(np.int64)


def _match_stubs(degrees, rng, max_rounds=200):
    """Configuration-model stub matching; self-loops and repeated pairs are rejected and their stubs rematched."""
    n = len(degrees)
    stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
    accepted = np.empty(0, dtype=np.int64)
    for _ in range(max_rounds):
        if len(stubs) < 2:
            break
        rng.shuffle(stubs)
        a, b = stubs[0::2], stubs[1::2]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        keys = lo * n + hi
        ok = lo != hi
        # first occurrence of a key in this round wins
        _, first = np.unique(keys, return_index=True)
        dedup = np.zeros(len(keys), dtype=bool)
        dedup[first] = True
        ok &= dedup & ~np.isin(keys, accepted)
        if not ok.any():
            # all remaining stubs keep colliding; give up on them
            break
        accepted = np.union1d(accepted, keys[ok])
        stubs = np.concatenate((a[~ok], b[~ok]))
    return np.column_stack((accepted // max(n, 1), accepted % max(n, 1)))


def generate_powerlaw_cm(n: int, gamma: float, dmin: int = 1, seed: int = 0) -> Graph:
    """Configuration-model graph on a discrete power-law degree sequence.

    Degrees are clipped to n - 1. An odd stub total is fixed by redrawing the
    degree of one randomly chosen vertex until the total is even.
    """
    if gamma <= 1:
        raise ValueError("gamma must exceed 1 (distribution is not normalisable otherwise)")
    if dmin < 1:
        raise ValueError("dmin must be at least 1")
    if n <= 0:
        return build_graph([], n=0)
    rng = np.random.default_rng(seed)
    deg = np.minimum(sample_discrete_powerlaw(n, gamma, dmin, rng), n - 1)
    if deg.sum() % 2:
        i = int(rng.integers(n))
        for _ in range(1000):
            deg[i] = min(int(sample_discrete_powerlaw(1, gamma, dmin, rng)[0]), n - 1)
            if deg.sum() % 2 == 0:
                break
        else:
            deg[i] += -1 if deg[i] > 0 else 1
    return build_graph(_match_stubs(deg, rng), n=n)


def generate_triangle_closure(n: int, m0: int, pt: float, seed: int = 0) -> Graph:
    """Holme-Kim growth: preferential attachment plus triad formation.

    Starts from a complete graph on ``m0`` vertices. Each arriving vertex
    makes ``m0`` links; the first is preferential, and every later one
    closes a triangle through the most recent preferential target with
    probability ``pt`` (falling back to preferential attachment when that
    target has no unused neighbours).
    """
    if m0 < 1:
        raise ValueError("m0 must be at least 1")
    if not 0.0 <= pt <= 1.0:
        raise ValueError("pt must lie in [0, 1]")
    if n <= m0:
        raise ValueError("n must exceed m0")
    rng = np.random.default_rng(seed)
    adj = [[] for _ in range(n)]
    edges = []
    ends = []  # each vertex repeated once per incident edge

    def link(a, b):
        adj[a].append(b)
        adj[b].append(a)
        edges.append((a, b))
        ends.extend((a, b))

    for a in range(m0):
        for b in range(a + 1, m0):
            link(a, b)

    for v in range(m0, n):
        chosen = set()

        def preferential():
            for _ in range(100):
                t = ends[rng.integers(len(ends))] if ends else int(rng.integers(v))
                if t not in chosen:
                    return t
            free = [x for x in range(v) if x not in chosen]
            return free[rng.integers(len(free))]

        last = preferential()
        chosen.add(last)
        for _ in range(m0 - 1):
            if pt > 0 and rng.random() < pt:
                cands = [x for x in adj[last] if x not in chosen]
                if cands:
                    chosen.add(cands[rng.integers(len(cands))])
                    continue
            last = preferential()
            chosen.add(last)
        for t in sorted(chosen):
            link(t, v)
    return build_graph(edges, n=n)
