"""Hop-plot based effective diameter."""

from __future__ import annotations

import numpy as np

from ._backend import get_kernels
from .errors import UndefinedMetricError
from .graph import Graph


def hop_plot(g: Graph, sources=None, backend=None) -> np.ndarray:
    """Cumulative fraction F(h) of reachable ordered pairs within h hops, h = 0..H.

    Self pairs are excluded and unreachable pairs do not enter the
    denominator, so F(0) = 0 and F(H) = 1.
    """
    if sources is None:
        sources = np.arange(g.n, dtype=np.int64)
    hist = get_kernels(backend).hop_histogram(g.offsets, g.neighbors, np.asarray(sources, dtype=np.int64))
    nz = np.flatnonzero(hist)
    if len(nz) == 0:
        raise UndefinedMetricError("no reachable vertex pairs")
    hist = hist[: nz[-1] + 1]
    return np.cumsum(hist) / hist.sum()


def interpolate_quantile(F, q=0.9) -> float:
    """Smallest real h with F(h) = q, interpolating linearly between integer hops."""
    h = int(np.searchsorted(F, q - 1e-12))
    lo = F[h - 1] if h > 0 else 0.0
    if F[h] == lo:
        return float(h)
    return (h - 1) + (q - lo) / (F[h] - lo)


def effective_diameter90(g: Graph, sources: int = 1000, seed: int = 0, backend=None) -> float:
    """90% effective diameter.

    BFS runs from every vertex when ``g.n <= sources``; otherwise from
    ``sources`` vertices drawn uniformly without replacement using ``seed``.
    """
    if sources < 1:
        raise ValueError("sources must be >= 1")
    if g.m == 0:
        raise UndefinedMetricError("graph has no edges")
    if g.n <= sources:
        src = np.arange(g.n, dtype=np.int64)
    else:
        rng = np.random.default_rng(seed)
        src = np.sort(rng.choice(g.n, size=sources, replace=False))
    return interpolate_quantile(hop_plot(g, src, backend), 0.9)
