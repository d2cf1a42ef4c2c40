"""Gaussian Wigner graph pairs, induced-subgraph sampling, and file ingestion.

A Gaussian Wigner graph on ``n`` labeled vertices is a complete weighted
graph whose n(n-1)/2 edge weights are i.i.d. standard normals.  A
correlated pair hides a latent vertex permutation ``pi*``: matched edge
weights are bivariate standard normals with correlation ``rho``, while
every marginal stays standard normal.  This module generates such pairs,
samples induced subgraphs from them, computes the common vertex sets
induced by a permutation, and reads/writes dense weighted graphs as
``u,v,weight`` CSV edge lists.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import rng as _rng
from .errors import DataFormatError, InvalidParameterError, SampleTooSmallError


class Hypothesis(enum.Enum):
    NULL = "null"
    ALT = "alt"


@dataclass
class WeightedGraph:
    """Symmetric real edge weights on ``n`` labeled vertices, no self-loops.

    ``weights`` is a dense (n, n) float array; the diagonal is forced to
    zero on construction because edges are unordered pairs of distinct
    vertices.
    """

    n: int = field(init=False)
    weights: np.ndarray

    def __init__(self, weights: np.ndarray):
        w = np.array(weights, dtype=np.float64, copy=True)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise InvalidParameterError(f"weights must be square, got shape {w.shape}")
        if w.shape[0] < 1:
            raise InvalidParameterError("graph needs at least one vertex")
        np.fill_diagonal(w, 0.0)
        if not np.array_equal(w, w.T):
            raise InvalidParameterError("weights must be exactly symmetric")
        self.n = w.shape[0]
        self.weights = w

    def weight(self, u: int, v: int) -> float:
        if u == v:
            raise InvalidParameterError("self-loops carry no weight")
        return float(self.weights[u, v])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedGraph)
            and self.n == other.n
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``range(n)`` stored as its image vector."""

    image: np.ndarray

    def __post_init__(self):
        img = np.asarray(self.image, dtype=np.int64)
        n = img.shape[0]
        if img.ndim != 1 or not np.array_equal(np.sort(img), np.arange(n)):
            raise InvalidParameterError("image must be a bijection on range(n)")
        object.__setattr__(self, "image", img)

    @property
    def n(self) -> int:
        return int(self.image.shape[0])

    def apply(self, v: int) -> int:
        return int(self.image[v])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.n, dtype=np.int64)
        return Permutation(inv)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(np.arange(n, dtype=np.int64))


@dataclass
class GraphPairInstance:
    """A (G1, G2) pair plus its hypothesis label and latent alignment."""

    g1: WeightedGraph
    g2: WeightedGraph
    hypothesis: Hypothesis
    latent_perm: Permutation | None = None
    rho: float | None = None

    def __post_init__(self):
        if self.g1.n != self.g2.n:
            raise InvalidParameterError("paired graphs must share a vertex count")
        if self.hypothesis is Hypothesis.ALT:
            if self.latent_perm is None or self.rho is None:
                raise InvalidParameterError("alternative instances carry a permutation and rho")
            if self.latent_perm.n != self.g1.n:
                raise InvalidParameterError("latent permutation size mismatch")

    @property
    def n(self) -> int:
        return self.g1.n


@dataclass
class SampledSubgraphs:
    """Induced subgraphs of a pair, with their parent-vertex index lists."""

    sub1: WeightedGraph
    sub2: WeightedGraph
    idx1: np.ndarray
    idx2: np.ndarray

    @property
    def s(self) -> int:
        return self.sub1.n


def _symmetric_normal(rand: np.random.Generator, n: int) -> np.ndarray:
    w = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    w[iu] = rand.standard_normal(iu[0].shape[0])
    return w + w.T


def generate_pair(n: int, rho: float, hypothesis: Hypothesis, seed: int) -> GraphPairInstance:
    """Draw a Gaussian Wigner pair, independent or correlated.

    Under the null the two graphs are independent with i.i.d. standard
    normal weights.  Under the alternative a uniform latent permutation
    ``pi*`` is drawn and matched edges are built additively,
    ``w2[pi*(u), pi*(v)] = rho * w1[u, v] + sqrt(1 - rho^2) * z``,
    which realizes the exact bivariate normal law while keeping both
    marginals standard normal.  Output is deterministic in (inputs, seed).
    """
    if n < 2:
        raise InvalidParameterError(f"n must be at least 2, got {n}")
    weights_rng = _rng.derive(seed, _rng.WEIGHTS)
    if hypothesis is Hypothesis.NULL:
        g1 = WeightedGraph(_symmetric_normal(weights_rng, n))
        g2 = WeightedGraph(_symmetric_normal(weights_rng, n))
        return GraphPairInstance(g1, g2, Hypothesis.NULL)

    if not 0.0 < rho < 1.0:
        raise InvalidParameterError(f"rho must lie in (0, 1) under the alternative, got {rho}")
    w1 = _symmetric_normal(weights_rng, n)
    z = _symmetric_normal(weights_rng, n)
    perm = Permutation(_rng.derive(seed, _rng.LATENT_PERM).permutation(n).astype(np.int64))
    matched = rho * w1 + math.sqrt(1.0 - rho * rho) * z
    w2 = np.zeros_like(w1)
    p = perm.image
    w2[np.ix_(p, p)] = matched
    return GraphPairInstance(
        WeightedGraph(w1), WeightedGraph(w2), Hypothesis.ALT, latent_perm=perm, rho=rho
    )


def sample_subgraphs(pair: GraphPairInstance, s: int, seed: int) -> SampledSubgraphs:
    """Independently sample s-vertex induced subgraphs from both sides.

    Vertex subsets are independent uniform draws without replacement,
    stored ascending; the subgraphs keep the parent edge weights between
    the retained vertices.
    """
    n = pair.n
    if not 1 <= s <= n:
        raise InvalidParameterError(f"subgraph size {s} must lie in [1, {n}]")
    idx1 = _rng.sample_subset(_rng.derive(seed, _rng.SUBSET_1), n, s)
    idx2 = _rng.sample_subset(_rng.derive(seed, _rng.SUBSET_2), n, s)
    sub1 = WeightedGraph(pair.g1.weights[np.ix_(idx1, idx1)])
    sub2 = WeightedGraph(pair.g2.weights[np.ix_(idx2, idx2)])
    return SampledSubgraphs(sub1, sub2, idx1, idx2)


def common_vertex_sets(
    sample: SampledSubgraphs, latent_perm: Permutation
) -> tuple[np.ndarray, np.ndarray]:
    """Local indices of the vertices the two samples share under ``latent_perm``.

    Returns (S, T): S holds local indices a of sub1 with
    ``perm(idx1[a])`` retained in sub2, T holds local indices b of sub2
    hit by the image of idx1.  The permutation restricted to S induces a
    bijection onto T, so both sets always have equal size.
    """
    if latent_perm.n < int(max(sample.idx1.max(initial=-1), sample.idx2.max(initial=-1))) + 1:
        raise InvalidParameterError("permutation smaller than parent vertex ids")
    mapped = latent_perm.image[sample.idx1]
    in2 = np.isin(mapped, sample.idx2)
    s_local = np.flatnonzero(in2).astype(np.int64)
    t_local = np.flatnonzero(np.isin(sample.idx2, mapped)).astype(np.int64)
    return s_local, t_local


def mapping_size_m(n: int, s: int, epsilon: float) -> int:
    """Mapping size floor((1 - epsilon) * s^2 / n) used by the detectors."""
    if not 0.0 < epsilon < 1.0:
        raise InvalidParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 1 <= s <= n:
        raise InvalidParameterError(f"s={s} must lie in [1, n={n}]")
    m = math.floor((1.0 - epsilon) * s * s / n)
    if m < 1:
        raise SampleTooSmallError(
            f"mapping size floor((1-{epsilon})*{s}^2/{n}) = {m} < 1; detection is degenerate"
        )
    return m


def load_graph_from_edge_list(path) -> WeightedGraph:
    """Read a dense weighted graph from a ``u,v,weight`` CSV edge list.

    Vertex ids are 0-based integers; a header row ``u,v,weight`` is
    required.  Pairs absent from the file default to weight 0.  Symmetric
    duplicates are accepted when their weights agree exactly; conflicting
    duplicates and self-loops are data errors.
    """
    entries: dict[tuple[int, int], float] = {}
    max_id = -1
    try:
        handle = open(path, "r", newline="")
    except OSError as exc:
        raise DataFormatError(f"cannot open {path}: {exc}") from exc
    with handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [c.strip() for c in header] != ["u", "v", "weight"]:
            raise DataFormatError(f"{path}:1: expected header 'u,v,weight', got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise DataFormatError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            try:
                u = int(row[0])
                v = int(row[1])
                w = float(row[2])
            except ValueError as exc:
                raise DataFormatError(f"{path}:{lineno}: {exc}") from exc
            if u < 0 or v < 0:
                raise DataFormatError(f"{path}:{lineno}: vertex ids must be non-negative")
            if u == v:
                raise DataFormatError(f"{path}:{lineno}: self-loop on vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in entries and entries[key] != w:
                raise DataFormatError(
                    f"{path}:{lineno}: conflicting weights {entries[key]} and {w} for edge {key}"
                )
            entries[key] = w
            max_id = max(max_id, u, v)
    if max_id < 0:
        raise DataFormatError(f"{path}: no edges; cannot infer a vertex count")
    n = max_id + 1
    weights = np.zeros((n, n))
    for (u, v), w in entries.items():
        weights[u, v] = w
        weights[v, u] = w
    return WeightedGraph(weights)


def dump_graph_to_edge_list(graph: WeightedGraph, path) -> None:
    """Write every unordered pair (u < v) as a ``u,v,weight`` CSV row."""
    try:
        handle = open(path, "w", newline="")
    except OSError as exc:
        raise DataFormatError(f"cannot write {path}: {exc}") from exc
    with handle:
        writer = csv.writer(handle)
        writer.writerow(["u", "v", "weight"])
        for u in range(graph.n):
            for v in range(u + 1, graph.n):
                writer.writerow([u, v, repr(float(graph.weights[u, v]))])
