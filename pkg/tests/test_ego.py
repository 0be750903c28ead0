import io
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

import oracles
from builders import complete, small_random_graphs, star
from egostat import (UndefinedMetricError, analyze_triangles, assortativity_ego, assortativity_global,
                     average_edge_multiplicity, build_graph, clustering_ego, edge_fourclique_counts,
                     ego_instance_summary, neighbor_degree_stats, weighted_mean_ego_degree)
from egostat.ego import ego_assortativity_pool, lower_median_from_hist, write_histogram_csv


def prep(g):
    vs, es = analyze_triangles(g)
    return vs, es.multiplicity


def test_instance_summary_named():
    vs, mult = prep(complete(3))
    s = ego_instance_summary(complete(3), vs, mult)
    assert s.count == 6 and s.mean == 1.0 and s.frac_zero == 0.0 and s.median == 1
    assert s.histogram.tolist() == [0, 6]
    vs, mult = prep(star(3))
    s = ego_instance_summary(star(3), vs, mult)
    assert s.frac_zero == 1.0 and s.histogram.tolist() == [6]
    with pytest.raises(UndefinedMetricError):
        ego_instance_summary(build_graph([], n=3), *prep(build_graph([], n=3)))


def test_lower_median():
    assert lower_median_from_hist(np.array([1, 1, 1, 1])) == 1  # {0,1,2,3}
    assert lower_median_from_hist(np.array([0, 2, 0, 1])) == 1  # {1,1,3}
    assert lower_median_from_hist(np.array([3])) == 0


def test_weighted_mean_named(karate):
    vs, _ = prep(complete(4))
    assert weighted_mean_ego_degree(vs).tolist() == [2.0] * 4
    vs, _ = prep(star(3))
    assert weighted_mean_ego_degree(vs)[0] == 0.0

    A = oracles.dense(karate.n, karate.edges())
    T, _ = oracles.triangles_by_triples(A)
    d = A.sum(axis=1)
    c33 = 2 * T[33] / (d[33] * (d[33] - 1))
    want = c33 * d[33] * (d[33] - 1) / d.mean()
    vs, _ = prep(karate)
    assert weighted_mean_ego_degree(vs)[33] == pytest.approx(want, rel=1e-12)
    with pytest.raises(UndefinedMetricError):
        weighted_mean_ego_degree(prep(build_graph([], n=2))[0])


def test_assortativity_global_named(karate):
    assert assortativity_global(star(3)).r == pytest.approx(-1.0)
    with pytest.raises(UndefinedMetricError, match="zero degree variance"):
        assortativity_global(complete(4))
    res = assortativity_global(karate)
    want = oracles.pearson(*oracles.global_pairs(oracles.dense(karate.n, karate.edges())))
    assert res.r == pytest.approx(want, abs=1e-9)
    assert abs(res.r - (-0.4756)) <= 0.0005
    assert res.pairs == 156


def test_ego_metrics_named():
    g = complete(4)
    _, mult = prep(g)
    with pytest.raises(UndefinedMetricError):
        assortativity_ego(g, mult)
    with pytest.raises(UndefinedMetricError, match="no triangles"):
        assortativity_ego(star(3), prep(star(3))[1])
    g = complete(5)
    _, mult = prep(g)
    assert clustering_ego(g, mult, edge_fourclique_counts(g)) == 1.0


def test_karate_against_materialized_egos(karate, backend):
    _, mult = prep(karate)
    q = edge_fourclique_counts(karate, mult)
    xs, ys, inst = oracles.materialize_egos(oracles.dense(karate.n, karate.edges()))
    assert assortativity_ego(karate, mult, backend).r == pytest.approx(oracles.pearson(xs, ys), abs=1e-9)
    assert clustering_ego(karate, mult, q) == pytest.approx(sum(inst) / len(inst), abs=1e-12)
    pool = ego_assortativity_pool(karate, mult)
    assert Counter(map(tuple, pool.tolist())) == Counter(zip(xs, ys))


def test_clustering_ego_exclude_flag(karate):
    _, mult = prep(karate)
    q = edge_fourclique_counts(karate, mult)
    # zero-filled instances contribute nothing, so excluding them only changes the denominator
    keep = mult >= 2
    got = clustering_ego(karate, mult, q, exclude_low_degree=True)
    assert got == pytest.approx(clustering_ego(karate, mult, q) * len(mult) / keep.sum(), rel=1e-12)
    assert got >= clustering_ego(karate, mult, q)


@pytest.mark.parametrize("g", small_random_graphs(24, seed=2))
def test_random_graphs_against_oracles(g, backend):
    if g.m == 0:
        pytest.skip("edgeless sample")
    vs, mult = prep(g)
    A = oracles.dense(g.n, g.edges())
    r = oracles.pearson(*oracles.global_pairs(A))
    if r is None:
        with pytest.raises(UndefinedMetricError):
            assortativity_global(g)
    else:
        assert assortativity_global(g).r == pytest.approx(r, abs=1e-9)
    xs, ys, inst = oracles.materialize_egos(A)
    r_ego = oracles.pearson(xs, ys) if xs else None
    if r_ego is None:
        with pytest.raises(UndefinedMetricError):
            assortativity_ego(g, mult, backend)
    else:
        assert assortativity_ego(g, mult, backend).r == pytest.approx(r_ego, abs=1e-9)
    q = edge_fourclique_counts(g, mult, backend)
    assert clustering_ego(g, mult, q) == pytest.approx(sum(inst) / len(inst), abs=1e-12)


@pytest.mark.parametrize("g", small_random_graphs(20, seed=3))
def test_instance_identities(g):
    if g.m == 0:
        pytest.skip("edgeless sample")
    vs, mult = prep(g)
    s = ego_instance_summary(g, vs, mult)
    assert abs(s.mean - average_edge_multiplicity(g, mult)) <= 1e-12
    assert s.count == 2 * g.m and 0 <= s.frac_zero <= 1
    # per-vertex mean ego degree equals C_u (d_u - 1), checked in rationals
    per_vertex_sum = np.bincount(g.sources, weights=mult, minlength=g.n).astype(np.int64)
    for u in range(g.n):
        d = int(vs.degree[u])
        if d == 0:
            continue
        mean_u = Fraction(int(per_vertex_sum[u]), d)
        c_u = Fraction(2 * int(vs.triangles[u]), d * (d - 1)) if d > 1 else Fraction(0)
        assert mean_u == c_u * (d - 1)
        assert s.per_vertex_mean[u] == pytest.approx(float(mean_u), rel=1e-15, abs=0)


def test_neighbor_degree_stats_named():
    s = neighbor_degree_stats(star(3))
    assert (s.vertex, s.instance, s.ego) == (2.5, 2.0, None)
    g = complete(4)
    s = neighbor_degree_stats(g, prep(g)[1])
    assert (s.vertex, s.instance, s.ego) == (3.0, 3.0, 2.0)
    with pytest.raises(UndefinedMetricError):
        neighbor_degree_stats(build_graph([], n=2))


def test_ego_annd_is_pool_marginal(karate):
    _, mult = prep(karate)
    pool = ego_assortativity_pool(karate, mult)
    assert neighbor_degree_stats(karate, mult).ego == pytest.approx(pool[:, 0].mean(), rel=1e-12)


@pytest.mark.parametrize("g", small_random_graphs(20, seed=5))
def test_friendship_paradox_direction(g):
    d = g.degrees
    if g.m == 0 or d.min() == d.max():
        pytest.skip("regular or edgeless sample")
    assert neighbor_degree_stats(g).instance >= d.mean()


def test_histogram_csv():
    buf = io.StringIO()
    write_histogram_csv(np.array([2, 0, 3]), buf)
    assert buf.getvalue() == "value,count\n0,2\n2,3\n"
