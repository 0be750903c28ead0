"""Ego-network statistics derived from per-edge triangle counts.

Treat the disjoint union of all ego networks as one graph: vertex u shows
up once in the ego network of each neighbour v, with degree m_uv there. An
ego edge (u, w) inside ego(v) corresponds to the triangle (u, v, w). No ego
subgraph is ever built; everything below is a sum over slots or triangles.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from ._kernels_np import iter_triangles
from .errors import UndefinedMetricError
from .graph import Graph
from .triangles import VertexStats


@dataclass(frozen=True, eq=False)
class EgoInstanceSummary:
    count: int
    histogram: np.ndarray  # histogram[k] = instances with ego degree k
    mean: float
    median: int
    frac_zero: float
    per_vertex_mean: np.ndarray
    per_vertex_weighted_mean: np.ndarray


@dataclass(frozen=True)
class AssortativityResult:
    r: float
    pairs: int
    mean: float
    variance: float


@dataclass(frozen=True)
class NeighborDegreeStats:
    vertex: float
    instance: float
    ego: float | None  # None when the graph has no triangles


def lower_median_from_hist(hist) -> int:
    total = int(hist.sum())
    # 0-based rank of the lower median
    rank = (total - 1) // 2
    return int(np.searchsorted(np.cumsum(hist), rank + 1))


def ego_instance_summary(g: Graph, vs: VertexStats, mult) -> EgoInstanceSummary:
    if g.m == 0:
        raise UndefinedMetricError("graph has no edges")
    mult = np.asarray(mult, dtype=np.int64)
    hist = np.bincount(mult)
    deg = vs.degree
    per_vertex = np.zeros(g.n)
    ok = deg > 0
    # sum over neighbours of m_uv is 2 T_u
    per_vertex[ok] = 2.0 * vs.triangles[ok] / deg[ok]
    return EgoInstanceSummary(
        count=len(mult),
        histogram=hist,
        mean=int(mult.sum()) / len(mult),
        median=lower_median_from_hist(hist),
        frac_zero=float(hist[0]) / len(mult),
        per_vertex_mean=per_vertex,
        per_vertex_weighted_mean=weighted_mean_ego_degree(vs),
    )


def weighted_mean_ego_degree(vs: VertexStats) -> np.ndarray:
    """C_u d_u (d_u - 1) / <d> for every vertex, i.e. 2 T_u / <d>."""
    total_deg = int(vs.degree.sum())
    if total_deg == 0:
        raise UndefinedMetricError("graph has no edges")
    mean_deg = total_deg / vs.n
    return 2.0 * vs.triangles / mean_deg


def _pearson_from_sums(n, s1, s2, sxy, what):
    # symmetric pool: both marginals share s1 and s2
    n, s1, s2, sxy = int(n), int(s1), int(s2), int(sxy)
    var_num = n * s2 - s1 * s1
    if var_num == 0:
        raise UndefinedMetricError(f"zero {what} variance")
    r = (n * sxy - s1 * s1) / var_num
    return AssortativityResult(r=r, pairs=n, mean=s1 / n, variance=var_num / (n * n))


def assortativity_global(g: Graph) -> AssortativityResult:
    """Pearson correlation of endpoint degrees over all 2m ordered edge ends."""
    if g.m == 0:
        raise UndefinedMetricError("graph has no edges")
    d = g.degrees.astype(np.int64)
    s1 = int((d * d).sum())
    s2 = int((d * d * d).sum())
    sxy = int((d[g.sources] * d[g.neighbors]).sum())
    return _pearson_from_sums(2 * g.m, s1, s2, sxy, "degree")


def assortativity_ego(g: Graph, mult, backend=None) -> AssortativityResult:
    """Degree assortativity of the union of all ego networks.

    Triangle (u, v, w) with edge multiplicities a = m_uv, b = m_uw, c = m_vw
    puts ego edge (u, v) in ego(w) with endpoint degrees (b, c), (v, w) in
    ego(u) with (a, b), and (u, w) in ego(v) with (a, c); each in both
    orientations. Summed over triangles the marginal moments collapse to
    per-slot sums of m, m^2 and m^3.
    """
    mult = np.asarray(mult, dtype=np.int64)
    n_pairs = int(mult.sum())  # 6 per triangle
    if n_pairs == 0:
        raise UndefinedMetricError("graph has no triangles")
    s1 = int((mult * mult).sum())
    s2 = int((mult * mult * mult).sum())
    cross = int(get_kernels(backend).ego_cross_sum(g.offsets, g.neighbors, mult))
    return _pearson_from_sums(n_pairs, s1, s2, 2 * cross, "ego degree")


def ego_assortativity_pool(g: Graph, mult) -> np.ndarray:
    """Explicit (N, 2) array of ordered ego-edge endpoint degrees, for auditing."""
    mult = np.asarray(mult, dtype=np.int64)
    chunks = []
    for s_uv, s_uw, s_vw, *_ in iter_triangles(g.offsets, g.neighbors):
        a, b, c = mult[s_uv], mult[s_uw], mult[s_vw]
        for x, y in ((b, c), (a, b), (a, c)):
            chunks.append(np.column_stack((x, y)))
            chunks.append(np.column_stack((y, x)))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(chunks)


def instance_clustering(mult, fourclique) -> np.ndarray:
    """Local clustering of each ego instance: 2 q / (m (m - 1)), 0 when m < 2."""
    m = np.asarray(mult, dtype=np.float64)
    q = np.asarray(fourclique, dtype=np.float64)
    out = np.zeros(len(m))
    ok = m >= 2
    out[ok] = 2.0 * q[ok] / (m[ok] * (m[ok] - 1.0))
    return out


def clustering_ego(g: Graph, mult, fourclique, exclude_low_degree=False) -> float:
    """Mean local clustering over ego instances.

    By default instances with ego degree < 2 count as 0 (the same convention
    as the global average); ``exclude_low_degree`` drops them instead.
    """
    if g.m == 0:
        raise UndefinedMetricError("graph has no edges")
    c = instance_clustering(mult, fourclique)
    if exclude_low_degree:
        keep = np.asarray(mult) >= 2
        if not keep.any():
            raise UndefinedMetricError("no ego instance of degree >= 2")
        c = c[keep]
    return math.fsum(c) / len(c)


def neighbor_degree_stats(g: Graph, mult=None) -> NeighborDegreeStats:
    """Three average-neighbour-degree summaries.

    vertex:   mean over non-isolated vertices of their mean neighbour degree
    instance: mean neighbour degree over all 2m edge ends, <d^2>/<d>
    ego:      the same over ego-edge ends, sum m^2 / sum m
    """
    if g.m == 0:
        raise UndefinedMetricError("graph has no edges")
    d = g.degrees.astype(np.int64)
    nz = d > 0
    per_vertex = np.bincount(g.sources, weights=d[g.neighbors], minlength=g.n)[nz] / d[nz]
    vertex = math.fsum(per_vertex) / int(nz.sum())
    instance = int((d * d).sum()) / int(d.sum())
    ego = None
    if mult is not None:
        mult = np.asarray(mult, dtype=np.int64)
        tot = int(mult.sum())
        if tot:
            ego = int((mult * mult).sum()) / tot
    return NeighborDegreeStats(vertex, instance, ego)


def write_histogram_csv(hist, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["value", "count"])
    for k in np.flatnonzero(hist):
        w.writerow([int(k), int(hist[k])])
