"""Time the numba kernels against the numpy fallback on synthetic graphs.

    python benchmarks/bench_kernels.py --n 20000 50000 --repeat 3
"""

import argparse
import time

import numpy as np

from egostat import generate_powerlaw_cm, generate_triangle_closure
from egostat._backend import get_kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_graph(name, g, repeat, bfs_sources):
    off, nbr, rev = g.offsets, g.neighbors, g.reverse_slots
    src = np.random.default_rng(0).choice(g.n, size=min(bfs_sources, g.n), replace=False).astype(np.int64)
    rows = []
    results = {}
    for backend in ("numba", "numpy"):
        k = get_kernels(backend)
        t_tri, (mult, _) = best_of(lambda: k.triangle_counts(off, nbr, rev), repeat)
        t_q, q = best_of(lambda: k.fourclique_counts(off, nbr, rev), repeat)
        t_x, _ = best_of(lambda: k.ego_cross_sum(off, nbr, mult), repeat)
        t_bfs, _ = best_of(lambda: k.hop_histogram(off, nbr, src), repeat)
        results[backend] = (mult, q)
        rows.append((backend, t_tri, t_q, t_x, t_bfs))
    same = all(np.array_equal(a, b) for a, b in zip(results["numba"], results["numpy"]))
    print(f"\n{name}: n={g.n} m={g.m} (outputs identical: {same})")
    print(f"{'backend':<8} {'triangles':>10} {'4-cliques':>10} {'cross-sum':>10} {'bfs':>10}")
    for backend, *ts in rows:
        print(f"{backend:<8} " + " ".join(f"{t:>9.3f}s" for t in ts))
    nb, npy = rows[0][1:], rows[1][1:]
    print(f"{'speedup':<8} " + " ".join(f"{b / a:>9.1f}x" if a > 0 else f"{'-':>10}" for a, b in zip(nb, npy)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[20_000, 100_000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--bfs-sources", type=int, default=100)
    args = ap.parse_args()

    # compile outside the timed region
    warm = generate_triangle_closure(50, 3, 0.5, seed=0)
    k = get_kernels("numba")
    t0 = time.perf_counter()
    m, _ = k.triangle_counts(warm.offsets, warm.neighbors, warm.reverse_slots)
    k.fourclique_counts(warm.offsets, warm.neighbors, warm.reverse_slots)
    k.ego_cross_sum(warm.offsets, warm.neighbors, m)
    k.hop_histogram(warm.offsets, warm.neighbors, np.arange(5, dtype=np.int64))
    print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.2f}s")

    for n in args.n:
        bench_graph("triangle closure, m0=5, pt=0.8", generate_triangle_closure(n, 5, 0.8, seed=1),
                    args.repeat, args.bfs_sources)
        bench_graph("configuration model, gamma=2.3", generate_powerlaw_cm(n, 2.3, 3, seed=1),
                    args.repeat, args.bfs_sources)


if __name__ == "__main__":
    main()
