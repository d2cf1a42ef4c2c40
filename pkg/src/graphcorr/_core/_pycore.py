"""Pure numpy/Python implementations of the search kernels.

These mirror the compiled extension exactly: same inputs, same outputs,
same lexicographic tie-breaking (first maximizer in enumeration order
wins, updates only on strictly greater scores).  They exist so the
package works without a C toolchain and as a reference for parity tests;
at experiment scale the compiled core is orders of magnitude faster.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

NEG_INF = -np.inf

# Guard for the broadcast clique search: s**(k1-1) doubles per scratch tensor.
_MAX_SCRATCH = 50_000_000


def _pair_list(k1: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(k1) for b in range(a + 1, k1)]


def _build_m(rmat: np.ndarray, pmat: np.ndarray, gammas_row: np.ndarray) -> np.ndarray:
    npairs = gammas_row.shape[0]
    m = gammas_row[:, None, None] * rmat[None, :, :] + pmat[None, :, :]
    s = rmat.shape[0]
    m[:, np.arange(s), np.arange(s)] = NEG_INF
    return m.reshape(npairs, s, s)


def _search_clique(m: np.ndarray, k1: int) -> tuple[float, tuple[int, ...]]:
    """Exact argmax over ordered k1-tuples of distinct image vertices.

    Repeated vertices are excluded by the -inf diagonals of every pair
    matrix: any tuple reusing a vertex hits at least one -inf term.
    """
    s = m.shape[1]
    pairs = _pair_list(k1)
    if k1 == 2:
        flat = int(np.argmax(m[0]))
        w = np.unravel_index(flat, (s, s))
        return float(m[0][w]), (int(w[0]), int(w[1]))

    if s ** (k1 - 1) > _MAX_SCRATCH:
        raise MemoryError(
            f"fallback clique search needs a {s}^{k1 - 1} scratch tensor; "
            "build the compiled core for this size"
        )
    # Terms not involving the first tuple slot, over axes (w1, ..., w_{k1-1}).
    base = np.zeros((s,) * (k1 - 1))
    first_slot_pairs = []
    for p, (a, b) in enumerate(pairs):
        if a == 0:
            first_slot_pairs.append((p, b))
            continue
        term = np.expand_dims(
            m[p], axis=tuple(i for i in range(k1 - 1) if i not in (a - 1, b - 1))
        )
        base = base + term

    best = NEG_INF
    best_tuple: tuple[int, ...] = ()
    rest_shape = (s,) * (k1 - 1)
    for w0 in range(s):
        t = base
        for p, b in first_slot_pairs:
            vec = m[p][w0]
            t = t + np.expand_dims(vec, axis=tuple(i for i in range(k1 - 1) if i != b - 1))
        flat = int(np.argmax(t))
        val = float(t.reshape(-1)[flat])
        if val > best:
            best = val
            best_tuple = (w0,) + tuple(int(i) for i in np.unravel_index(flat, rest_shape))
    return best, best_tuple


def match_cliques_batch(
    rmat: np.ndarray,
    pmat: np.ndarray,
    gammas: np.ndarray,
    consts: np.ndarray,
    k1: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Best injection per clique.

    rmat is sub2's weight matrix, pmat its elementwise square scaled by
    the kernel's y^2 coefficient; gammas[i, p] scales rmat for clique i's
    p-th domain pair and consts[i] collects the injection-independent
    x^2 terms.  Returns (scores, image tuples), one row per clique.
    """
    n1 = gammas.shape[0]
    scores = np.empty(n1)
    images = np.empty((n1, k1), dtype=np.int64)
    for i in range(n1):
        m = _build_m(rmat, pmat, gammas[i])
        best, tup = _search_clique(m, k1)
        scores[i] = best + consts[i]
        images[i] = tup
    return scores, images


def pairwise_compatible(doms: np.ndarray, imgs: np.ndarray) -> np.ndarray:
    """Boolean matrix: cliques a, b merge into a consistent injection.

    Compatibility demands that shared domain vertices share an image and
    that distinct domain vertices never collide on one image, i.e. for
    all slots i, j: dom[a,i] == dom[b,j] exactly when img[a,i] == img[b,j].
    """
    d_eq = doms[:, None, :, None] == doms[None, :, None, :]
    i_eq = imgs[:, None, :, None] == imgs[None, :, None, :]
    return np.all(d_eq == i_eq, axis=(2, 3))


def _merged_mapping(
    doms: np.ndarray, imgs: np.ndarray, u: tuple[int, ...]
) -> tuple[np.ndarray, np.ndarray]:
    merged: dict[int, int] = {}
    for j in u:
        for v, w in zip(doms[j], imgs[j]):
            merged[int(v)] = int(w)
    dom = np.fromiter(merged.keys(), dtype=np.int64)
    img = np.fromiter(merged.values(), dtype=np.int64)
    return dom, img


def _avg_score(
    w1: np.ndarray, w2: np.ndarray, dom: np.ndarray, img: np.ndarray,
    cxy: float, cxx: float, cyy: float,
) -> float:
    k = dom.shape[0]
    iu = np.triu_indices(k, k=1)
    x = w1[np.ix_(dom, dom)][iu]
    y = w2[np.ix_(img, img)][iu]
    total = cxy * np.dot(x, y) + cxx * np.dot(x, x) + cyy * np.dot(y, y)
    return float(total) / math.comb(k, 2)


def seed_search(
    doms: np.ndarray,
    imgs: np.ndarray,
    compat: np.ndarray,
    w1: np.ndarray,
    w2: np.ndarray,
    cxy: float,
    cxx: float,
    cyy: float,
    k2: int,
) -> tuple[bool, tuple[int, ...], float]:
    """Best average-score union of k2 pairwise-compatible cliques.

    Subsets are visited in lexicographic index order and the score must
    strictly improve, so ties resolve to the smallest subset.
    """
    n2 = doms.shape[0]
    best = NEG_INF
    best_u: tuple[int, ...] = ()
    for u in itertools.combinations(range(n2), k2):
        if not all(compat[a, b] for a, b in itertools.combinations(u, 2)):
            continue
        dom, img = _merged_mapping(doms, imgs, u)
        avg = _avg_score(w1, w2, dom, img, cxy, cxx, cyy)
        if avg > best:
            best = avg
            best_u = u
    return best_u != (), best_u, best


def exact_search(
    w1: np.ndarray,
    w2: np.ndarray,
    m: int,
    cxy: float,
    cxx: float,
    cyy: float,
    perms: np.ndarray,
) -> tuple[float, tuple[int, ...], tuple[int, ...]]:
    """Exhaustive maximum over size-m injections, lexicographic tie-break.

    Enumerates domain subsets, image subsets, then pairings, each in
    lexicographic order; perms holds every permutation of range(m) in
    lexicographic row order.
    """
    s1 = w1.shape[0]
    s2 = w2.shape[0]
    iu = np.triu_indices(m, k=1)
    best = NEG_INF
    best_dom: tuple[int, ...] = ()
    best_img: tuple[int, ...] = ()
    for dom in itertools.combinations(range(s1), m):
        d = np.asarray(dom, dtype=np.int64)
        x = w1[np.ix_(d, d)][iu]
        xg = cxy * x
        const = cxx * float(np.dot(x, x))
        for img in itertools.combinations(range(s2), m):
            i_arr = np.asarray(img, dtype=np.int64)
            sub2 = w2[np.ix_(i_arr, i_arr)]
            sq2 = sub2 * sub2
            for perm in perms:
                y = sub2[perm[iu[0]], perm[iu[1]]]
                total = const + float(np.dot(xg, y)) + cyy * float(
                    np.sum(sq2[perm[iu[0]], perm[iu[1]]])
                )
                if total > best:
                    best = total
                    best_dom = dom
                    best_img = tuple(int(i_arr[p]) for p in perm)
    return best, best_dom, best_img
