"""Clique-based approximate detection.

The detector approximates the exact max-similarity statistic in three
stages.  It samples n1 distinct k1-vertex sets of sub1 and matches each
against sub2 exactly; keeps the n2 best-scoring matches; merges every
compatible group of k2 of them into candidate seeds and keeps the seed
with the best average score; then grows the seed greedily one vertex
pair at a time until the mapping reaches size m.  The score of the final
mapping is the test statistic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _core
from . import rng as _rng
from .errors import InfeasibleError, InvalidParameterError
from .exact import Decision, decide
from .model import WeightedGraph
from .similarity import PartialInjection, SimilarityKernel, similarity_score


@dataclass(frozen=True)
class AlgoParams:
    """Tuning knobs of the clique detector.

    m may be smaller than k1: the greedy growth stage simply never runs
    and the statistic is computed on the seed itself, which is how the
    detector behaves when the nominal mapping size degenerates at small
    subgraph sizes.
    """

    k1: int
    k2: int
    n1: int
    n2: int
    m: int
    f: SimilarityKernel
    tau: float
    seed: int

    def __post_init__(self):
        if self.k1 < 2:
            raise InvalidParameterError(f"clique size k1 must be >= 2, got {self.k1}")
        if self.k2 < 1:
            raise InvalidParameterError(f"combining size k2 must be >= 1, got {self.k2}")
        if self.n1 < 1:
            raise InvalidParameterError(f"clique count n1 must be >= 1, got {self.n1}")
        if not 1 <= self.n2 <= self.n1:
            raise InvalidParameterError(f"n2 must lie in [1, n1={self.n1}], got {self.n2}")
        if self.k2 > self.n2:
            raise InvalidParameterError(f"k2={self.k2} cannot exceed n2={self.n2}")
        if self.m < 1:
            raise InvalidParameterError(f"mapping size m must be >= 1, got {self.m}")


@dataclass(frozen=True)
class CliqueMatch:
    """One sampled vertex set with its best injection into sub2."""

    vertex_set: np.ndarray
    mapping: PartialInjection
    score: float


@dataclass(frozen=True)
class SeedMapping:
    """A merged mapping and its score averaged over binom(|domain|, 2)."""

    pi0: PartialInjection
    avg_score: float


@dataclass(frozen=True)
class DetectionResult:
    statistic: float
    decision: Decision
    mapping: PartialInjection


def _sample_distinct_subsets(
    rand: np.random.Generator, s: int, k1: int, n1: int, total: int
) -> np.ndarray:
    """n1 distinct k1-subsets of range(s), uniform without replacement."""
    if total <= 2 * n1:
        # Dense regime: enumerate everything and take a random prefix;
        # rejection sampling would thrash near exhaustion.
        all_subsets = np.array(list(itertools.combinations(range(s), k1)), dtype=np.int64)
        order = rand.permutation(total)[:n1]
        return all_subsets[order]
    seen: set[tuple[int, ...]] = set()
    out = np.empty((n1, k1), dtype=np.int64)
    count = 0
    while count < n1:
        subset = _rng.sample_subset(rand, s, k1)
        key = tuple(int(v) for v in subset)
        if key in seen:
            continue
        seen.add(key)
        out[count] = subset
        count += 1
    return out


def match_cliques(
    sub1: WeightedGraph,
    sub2: WeightedGraph,
    k1: int,
    n1: int,
    f: SimilarityKernel,
    seed: int,
) -> list[CliqueMatch]:
    """Sample n1 distinct k1-sets and match each one exactly into sub2.

    Each match is the true argmax over all ordered tuples of distinct
    sub2 vertices, ties broken lexicographically; the list comes back in
    generation order.
    """
    s1, s2 = sub1.n, sub2.n
    if k1 < 2:
        raise InvalidParameterError(f"clique size k1 must be >= 2, got {k1}")
    if k1 > s1 or k1 > s2:
        raise InvalidParameterError(f"clique size {k1} exceeds subgraph size {min(s1, s2)}")
    if n1 < 1:
        raise InvalidParameterError(f"n1 must be >= 1, got {n1}")
    total = math.comb(s1, k1)
    if total < n1:
        raise InfeasibleError(
            f"cannot draw {n1} distinct {k1}-subsets from {s1} vertices (only {total} exist)"
        )
    subsets = _sample_distinct_subsets(_rng.derive(seed, _rng.CLIQUE_SETS), s1, k1, n1, total)

    cxy, cxx, cyy = f.coefficients()
    pair_a, pair_b = np.triu_indices(k1, k=1)
    domain_weights = sub1.weights[subsets[:, pair_a], subsets[:, pair_b]]
    gammas = np.ascontiguousarray(cxy * domain_weights)
    consts = np.ascontiguousarray(cxx * np.sum(domain_weights * domain_weights, axis=1))
    rmat = np.ascontiguousarray(sub2.weights)
    pmat = np.ascontiguousarray(cyy * sub2.weights * sub2.weights)

    scores, images = _core.active.match_cliques_batch(rmat, pmat, gammas, consts, k1)
    return [
        CliqueMatch(
            vertex_set=subsets[i],
            mapping=PartialInjection(subsets[i], images[i]),
            score=float(scores[i]),
        )
        for i in range(n1)
    ]


def select_top(matches: list[CliqueMatch], n2: int) -> list[CliqueMatch]:
    """The n2 highest-scoring matches, earlier generation index on ties."""
    if not 1 <= n2 <= len(matches):
        raise InvalidParameterError(f"n2 must lie in [1, {len(matches)}], got {n2}")
    scores = np.array([m.score for m in matches])
    order = np.argsort(-scores, kind="stable")[:n2]
    return [matches[int(i)] for i in order]


def _merged_injection(top: list[CliqueMatch], u: tuple[int, ...]) -> PartialInjection:
    merged: dict[int, int] = {}
    for j in u:
        merged.update(top[j].mapping.as_dict())
    dom = np.fromiter(merged.keys(), dtype=np.int64)
    img = np.fromiter(merged.values(), dtype=np.int64)
    order = np.argsort(dom)
    return PartialInjection(dom[order], img[order])


def find_seed(
    top: list[CliqueMatch],
    k2: int,
    f: SimilarityKernel,
    sub1: WeightedGraph,
    sub2: WeightedGraph,
) -> SeedMapping:
    """Best average-score merge of k2 compatible matches from ``top``.

    A group is compatible when shared domain vertices agree on their
    image and the merged mapping stays injective.  If no group of size
    k2 is compatible the search retries at k2 - 1 and so on down to
    singletons, which always succeed.  Ties pick the lexicographically
    smallest index set.
    """
    if not top:
        raise InvalidParameterError("cannot build a seed from an empty match list")
    if not 1 <= k2 <= len(top):
        raise InvalidParameterError(f"k2 must lie in [1, {len(top)}], got {k2}")
    doms = np.ascontiguousarray(np.array([m.mapping.domain for m in top], dtype=np.int64))
    imgs = np.ascontiguousarray(np.array([m.mapping.image for m in top], dtype=np.int64))
    k1 = doms.shape[1]
    compat = _core.active.pairwise_compatible(doms, imgs)
    compat_u8 = np.ascontiguousarray(compat.view(np.uint8))
    cxy, cxx, cyy = f.coefficients()
    w1 = np.ascontiguousarray(sub1.weights)
    w2 = np.ascontiguousarray(sub2.weights)

    for size in range(k2, 0, -1):
        core = _core.active
        if core is not _core.pycore and (size > 3 or k1 * size > 64):
            core = _core.pycore
        found, u, avg = core.seed_search(doms, imgs, compat_u8, w1, w2, cxy, cxx, cyy, size)
        if found:
            return SeedMapping(_merged_injection(top, u), float(avg))
    raise InvalidParameterError("no compatible seed exists")  # unreachable: singletons succeed


def _greedy_step(
    w1: np.ndarray,
    w2: np.ndarray,
    dom: np.ndarray,
    img: np.ndarray,
    coeffs: tuple[float, float, float],
) -> tuple[int, int]:
    """Vertex pair maximizing the summed kernel against the current mapping."""
    cxy, cxx, cyy = coeffs
    cand1 = np.setdiff1d(np.arange(w1.shape[0]), dom)
    cand2 = np.setdiff1d(np.arange(w2.shape[0]), img)
    a = w1[np.ix_(cand1, dom)]
    b = w2[np.ix_(cand2, img)]
    inc = cxy * (a @ b.T)
    if cxx != 0.0:
        inc += cxx * np.sum(a * a, axis=1)[:, None]
    if cyy != 0.0:
        inc += cyy * np.sum(b * b, axis=1)[None, :]
    flat = int(np.argmax(inc))
    i, j = np.unravel_index(flat, inc.shape)
    return int(cand1[i]), int(cand2[j])


def extend_mapping(
    seed: SeedMapping,
    sub1: WeightedGraph,
    sub2: WeightedGraph,
    m: int,
    f: SimilarityKernel,
) -> PartialInjection:
    """Grow the seed to exactly m vertices by repeated greedy pair argmax.

    Each round scans every unmapped pair (v1, v2) and appends the one
    maximizing the summed kernel against the current mapping; ties pick
    the smallest (v1, v2).  Seeds are never shrunk, so a seed already
    larger than m is an error at this interface.
    """
    pi0 = seed.pi0
    if m > min(sub1.n, sub2.n):
        raise InvalidParameterError(f"target size {m} exceeds subgraph size")
    if pi0.size > m:
        raise InvalidParameterError(f"seed of size {pi0.size} cannot shrink to {m}")
    dom = pi0.domain.copy()
    img = pi0.image.copy()
    coeffs = f.coefficients()
    while dom.shape[0] < m:
        v1, v2 = _greedy_step(sub1.weights, sub2.weights, dom, img, coeffs)
        dom = np.append(dom, v1)
        img = np.append(img, v2)
    return PartialInjection(dom, img)


def detect(sub1: WeightedGraph, sub2: WeightedGraph, params: AlgoParams) -> DetectionResult:
    """Full pipeline: match cliques, pick a seed, grow it, threshold it.

    When the seed already has at least m vertices the growth stage is
    skipped and the statistic is computed over the seed itself; the
    mapping is never truncated.
    """
    matches = match_cliques(sub1, sub2, params.k1, params.n1, params.f, params.seed)
    top = select_top(matches, params.n2)
    seed = find_seed(top, params.k2, params.f, sub1, sub2)
    if seed.pi0.size < params.m:
        final = extend_mapping(seed, sub1, sub2, params.m, params.f)
    else:
        final = seed.pi0
    statistic = similarity_score(params.f, sub1, sub2, final)
    return DetectionResult(statistic, decide(statistic, params.tau), final)
