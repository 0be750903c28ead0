"""Triangle-derived vertex and edge statistics."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from .errors import UndefinedMetricError
from .graph import Graph


@dataclass(frozen=True, eq=False)
class VertexStats:
    degree: np.ndarray
    triangles: np.ndarray
    clustering: np.ndarray

    @property
    def n(self):
        return len(self.degree)


@dataclass(frozen=True, eq=False)
class EdgeStats:
    """Per-slot arrays aligned with ``Graph.neighbors``."""

    multiplicity: np.ndarray
    fourclique: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class DegreeProfile:
    k: np.ndarray
    count: np.ndarray
    clustering: np.ndarray
    annd: np.ndarray

    def as_dict(self):
        return {int(k): (int(c), float(cl), float(a))
                for k, c, cl, a in zip(self.k, self.count, self.clustering, self.annd)}


def local_clustering(degree, triangles):
    d = degree.astype(np.float64)
    c = np.zeros(len(degree), dtype=np.float64)
    ok = degree >= 2
    c[ok] = 2.0 * triangles[ok] / (d[ok] * (d[ok] - 1.0))
    return c


def triangle_pass(g: Graph, backend=None):
    """One kernel pass: (per-slot multiplicity, per-vertex triangle count)."""
    k = get_kernels(backend)
    return k.triangle_counts(g.offsets, g.neighbors, g.reverse_slots)


def analyze_triangles(g: Graph, backend=None):
    """VertexStats and EdgeStats (without 4-cliques) from a single triangle pass."""
    mult, tri = triangle_pass(g, backend)
    deg = g.degrees
    return VertexStats(deg, tri, local_clustering(deg, tri)), EdgeStats(mult)


def vertex_stats(g: Graph, backend=None) -> VertexStats:
    return analyze_triangles(g, backend)[0]


def edge_multiplicities(g: Graph, backend=None) -> np.ndarray:
    """m_uv = |N(u) & N(v)| for every adjacency slot."""
    return triangle_pass(g, backend)[0]


def edge_fourclique_counts(g: Graph, mult=None, backend=None) -> np.ndarray:
    """Number of 4-cliques through each edge, per adjacency slot.

    ``mult`` is accepted for interface symmetry; slots with m_uv < 2 cannot
    be in a 4-clique, which the kernel discovers on its own.
    """
    k = get_kernels(backend)
    q = k.fourclique_counts(g.offsets, g.neighbors, g.reverse_slots)
    if mult is not None:
        q[np.asarray(mult) < 2] = 0
    return q


def total_triangles(vs: VertexStats) -> int:
    return int(vs.triangles.sum()) // 3


def mean_neighbor_degree(g: Graph) -> np.ndarray:
    """Per-vertex mean degree of neighbours (0 for isolated vertices)."""
    deg = g.degrees
    s = np.bincount(g.sources, weights=deg[g.neighbors], minlength=g.n)
    out = np.zeros(g.n)
    ok = deg > 0
    out[ok] = s[ok] / deg[ok]
    return out


def degree_profile(g: Graph, vs: VertexStats) -> DegreeProfile:
    ks, inv, counts = np.unique(vs.degree, return_inverse=True, return_counts=True)
    c = np.bincount(inv, weights=vs.clustering, minlength=len(ks)) / counts
    annd = np.bincount(inv, weights=mean_neighbor_degree(g), minlength=len(ks)) / counts
    return DegreeProfile(ks, counts, c, annd)


def global_clustering(vs: VertexStats) -> float:
    """Average local clustering, with C_u = 0 counted for vertices of degree < 2."""
    if vs.n == 0:
        raise UndefinedMetricError("empty graph")
    return math.fsum(vs.clustering) / vs.n


def average_edge_multiplicity(g: Graph, mult) -> float:
    if g.m == 0:
        raise UndefinedMetricError("graph has no edges")
    # every undirected edge appears in two slots
    return int(np.asarray(mult, dtype=np.int64).sum()) / (2 * g.m)


def write_edge_stats_csv(g: Graph, es: EdgeStats, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["u", "v", "m_uv", "q_uv"])
    up = g.upper_slots()
    src, dst = g.sources[up], g.neighbors[up]
    if g.labels is not None:
        src, dst = g.labels[src], g.labels[dst]
    q = es.fourclique[up] if es.fourclique is not None else [""] * len(up)
    for row in zip(src, dst, es.multiplicity[up], q):
        w.writerow(row)
