"""Benchmark the compiled search kernels against the pure-Python fallback.

Run:  python benchmarks/bench_cores.py [--quick]

Also prints the clique-matching scaling against its n1 * s^k1 cost model.
"""

from __future__ import annotations

import argparse
import itertools
import math
import time

import numpy as np

import graphcorr as gc
from graphcorr import _core
from graphcorr.clique import _sample_distinct_subsets
from graphcorr import rng as _rng


def _clique_inputs(sample, k1, n1, f, seed=11):
    subsets = _sample_distinct_subsets(
        _rng.derive(seed, _rng.CLIQUE_SETS), sample.s, k1, n1, math.comb(sample.s, k1)
    )
    cxy, cxx, cyy = f.coefficients()
    a, b = np.triu_indices(k1, k=1)
    dw = sample.sub1.weights[subsets[:, a], subsets[:, b]]
    return (
        np.ascontiguousarray(sample.sub2.weights),
        np.ascontiguousarray(cyy * sample.sub2.weights**2),
        np.ascontiguousarray(cxy * dw),
        np.ascontiguousarray(cxx * np.sum(dw * dw, axis=1)),
    )


def timeit(fn, repeat=3):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_cliques(sample, k1, n1):
    rmat, pmat, gammas, consts = _clique_inputs(sample, k1, n1, gc.MSE)
    rows = []
    for name, core in backends():
        rows.append((name, timeit(lambda: core.match_cliques_batch(rmat, pmat, gammas, consts, k1))))
    return rows


def bench_seed(sample, n1, n2, k2):
    matches = gc.match_cliques(sample.sub1, sample.sub2, 4, n1, gc.MSE, seed=5)
    top = gc.select_top(matches, n2)
    doms = np.ascontiguousarray(np.array([m.mapping.domain for m in top]))
    imgs = np.ascontiguousarray(np.array([m.mapping.image for m in top]))
    w1 = np.ascontiguousarray(sample.sub1.weights)
    w2 = np.ascontiguousarray(sample.sub2.weights)
    rows = []
    for name, core in backends():
        compat = core.pairwise_compatible(doms, imgs)
        compat_u8 = np.ascontiguousarray(compat.view(np.uint8))
        rows.append(
            (name, timeit(lambda: core.seed_search(doms, imgs, compat_u8, w1, w2, 1.0, -0.5, -0.5, k2)))
        )
    return rows


def bench_exact(sample, m):
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.int64)
    w1 = np.ascontiguousarray(sample.sub1.weights)
    w2 = np.ascontiguousarray(sample.sub2.weights)
    rows = []
    for name, core in backends():
        rows.append((name, timeit(lambda: core.exact_search(w1, w2, m, 1.0, -0.5, -0.5, perms), repeat=1)))
    return rows


def backends():
    out = [("python", _core.pycore)]
    if _core.fastcore is not None:
        out.insert(0, ("compiled", _core.fastcore))
    return out


def table(title, rows):
    print(f"\n{title}")
    base = dict(rows).get("python")
    for name, t in rows:
        speedup = f"  ({base / t:6.1f}x)" if name == "compiled" and base else ""
        print(f"  {name:<9} {t * 1e3:10.2f} ms{speedup}")


def scaling_smoke(pair):
    print("\nclique matching cost vs n1 * s^k1 (compiled, k1=4)")
    if _core.fastcore is None:
        print("  compiled core unavailable; skipping")
        return
    ref = None
    for s, n1 in [(15, 400), (25, 400), (25, 1600), (35, 1600)]:
        sample = gc.sample_subgraphs(pair, s, seed=3)
        rmat, pmat, gammas, consts = _clique_inputs(sample, 4, n1, gc.MSE)
        t = timeit(lambda: _core.fastcore.match_cliques_batch(rmat, pmat, gammas, consts, 4))
        model = n1 * s**4
        if ref is None:
            ref = t / model
        print(
            f"  s={s:<3} n1={n1:<5} {t * 1e3:9.2f} ms   model ratio {t / model / ref:5.2f}"
        )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller sizes")
    args = parser.parse_args()

    pair = gc.generate_pair(50, 0.99, gc.Hypothesis.ALT, seed=42)
    sample = gc.sample_subgraphs(pair, 25, seed=5)
    small = gc.sample_subgraphs(pair, 8, seed=5)

    n_clique = 50 if args.quick else 200
    table(f"clique matching (s=25, k1=4, n1={n_clique})", bench_cliques(sample, 4, n_clique))
    n1, n2 = (100, 50) if args.quick else (500, 100)
    table(f"seed search (n1={n1}, n2={n2}, k2=3)", bench_seed(sample, n1, n2, 3))
    table("exact enumeration (s=8, m=3)", bench_exact(small, 3))
    scaling_smoke(pair)


if __name__ == "__main__":
    main()
