"""Probabilistic and combinatorial verification toolkit.

Exact hypergeometric law of the common vertex set and its tail bounds,
closed-form moment generating functions for the two kernel statistics,
the bivariate-normal likelihood ratio, the merged digraph built from two
candidate permutations (whose components factor joint likelihoods into
independent path and cycle terms), the core agreement set with its tail
bound, Monte Carlo estimators for the component expectations, and the
sample-size boundary calculator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import rng as _rng
from .errors import GraphCorrError, InvalidParameterError
from .model import Permutation

# ---------------------------------------------------------------------------
# Hypergeometric law and tails


def log_binom(n: int, k: int) -> float:
    if k < 0 or k > n:
        return -math.inf
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def hypergeom_pmf(n: int, s: int, t: int) -> float:
    """P(|overlap| = t) for two independent uniform s-subsets of [n].

    binom(s, t) * binom(n - s, s - t) / binom(n, s), evaluated with exact
    integer binomials and a single correctly rounded division, so each
    value is accurate to one ulp; beyond n = 20000 an overflow-proof
    log-space evaluation takes over (accurate to ~1e-11 there).
    """
    if not 1 <= s <= n:
        raise InvalidParameterError(f"need 1 <= s <= n, got s={s}, n={n}")
    if not 0 <= t <= s:
        raise InvalidParameterError(f"need 0 <= t <= s, got t={t}")
    if s - t > n - s:
        return 0.0
    if n <= 20_000:
        return (math.comb(s, t) * math.comb(n - s, s - t)) / math.comb(n, s)
    return math.exp(log_binom(s, t) + log_binom(n - s, s - t) - log_binom(n, s))


def hypergeom_tail_bounds(n: int, s: int, epsilon: float) -> tuple[float, float]:
    """Closed-form bounds on both overlap tails.

    Returns (upper, lower): upper bounds P(eta >= (1+eps) s^2/n) and
    lower bounds P(eta <= (1-eps) s^2/n) for eta ~ HG(n, s, s); each is
    the smaller of a Chernoff-style and a Hoeffding-style exponential.
    """
    if not 1 <= s <= n:
        raise InvalidParameterError(f"need 1 <= s <= n, got s={s}, n={n}")
    if epsilon <= 0:
        raise InvalidParameterError(f"epsilon must be positive, got {epsilon}")
    e2 = epsilon * epsilon
    hoeffding = math.exp(-e2 * s**3 / n**2)
    upper = min(math.exp(-e2 * s * s / ((2.0 + epsilon) * n)), hoeffding)
    lower = min(math.exp(-e2 * s * s / (2.0 * n)), hoeffding)
    return upper, lower


# ---------------------------------------------------------------------------
# Moment generating functions and the likelihood ratio


def mgf_overlap(lam: float) -> float:
    """E[exp(lam * X * Y)] = 1 / sqrt(1 - lam^2) for independent standard normals."""
    if not abs(lam) < 1.0:
        raise InvalidParameterError(f"mgf diverges for |lambda| >= 1, got {lam}")
    return 1.0 / math.sqrt(1.0 - lam * lam)


def mgf_mse(lam: float) -> float:
    """E[exp(-(lam/2) (X - Y)^2)] = 1 / sqrt(1 + 2 lam), lam > -1/2."""
    if lam <= -0.5:
        raise InvalidParameterError(f"mgf diverges for lambda <= -1/2, got {lam}")
    return 1.0 / math.sqrt(1.0 + 2.0 * lam)


def likelihood_ratio(a, b, rho: float):
    """Density ratio of correlated vs independent standard normal pairs.

    (1 - rho^2)^(-1/2) * exp((-rho^2 (a^2 + b^2) + 2 rho a b) / (2 (1 - rho^2))).
    Accepts scalars or numpy arrays.
    """
    if not 0.0 < rho < 1.0:
        raise InvalidParameterError(f"rho must lie in (0, 1), got {rho}")
    r2 = rho * rho
    denom = 2.0 * (1.0 - r2)
    expo = (-r2 * (a * a + b * b) + 2.0 * rho * a * b) / denom
    return np.exp(expo) / math.sqrt(1.0 - r2)


# ---------------------------------------------------------------------------
# Merged digraph of two candidate permutations

EdgeKey = tuple[str, int, int]  # ("L"|"R", u, v) with u < v


@dataclass
class FunctionalDigraph:
    """Digraph on edge identifiers induced by two permutations.

    Side-1 nodes are vertex pairs inside either permutation's retained
    domain; side-2 nodes are pairs inside either image.  Each side-1
    pair of the second permutation is merged with its image pair, and an
    arc joins every side-1 pair of the first permutation to its image.
    Merged nodes hold one or two keys; every node has total degree <= 2,
    so components are simple paths and cycles.
    """

    groups: list[tuple[EdgeKey, ...]]
    arcs: list[tuple[int, int]]
    s_pi: np.ndarray
    s_pit: np.ndarray
    t_pi: np.ndarray
    t_pit: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.groups)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.node_count, dtype=np.int64)
        for u, v in self.arcs:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass
class Decomposition:
    """Connected components of the merged digraph, split by shape.

    ``cycle_side1_counts[i]`` counts the side-1 edge identifiers inside
    ``cycles[i]``; that count is the cycle length the component
    expectation formulas depend on.
    """

    paths: list[list[int]]
    cycles: list[list[int]]
    cycle_side1_counts: list[int]

    def cycle_len(self, i: int) -> int:
        return self.cycle_side1_counts[i]


@dataclass(frozen=True)
class CoreSet:
    """Largest side-1 vertex set on which the two permutations agree."""

    vertices: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))

    @property
    def size(self) -> int:
        return int(self.vertices.shape[0])


def _retained_domain(perm: Permutation, idx1: np.ndarray, idx2: np.ndarray) -> np.ndarray:
    idx1 = np.asarray(idx1, dtype=np.int64)
    keep = np.isin(perm.image[idx1], np.asarray(idx2, dtype=np.int64))
    return np.sort(idx1[keep])


def _pair_keys(side: str, vertices: np.ndarray) -> list[EdgeKey]:
    return [(side, int(u), int(v)) for u, v in itertools.combinations(sorted(vertices), 2)]


def _map_pair(perm: Permutation, u: int, v: int) -> tuple[int, int]:
    a, b = int(perm.image[u]), int(perm.image[v])
    return (a, b) if a < b else (b, a)


def build_digraph(
    pi: Permutation, pit: Permutation, idx1: np.ndarray, idx2: np.ndarray
) -> FunctionalDigraph:
    """Construct the merged digraph for permutations pi and pit."""
    if pi.n != pit.n:
        raise InvalidParameterError("permutations must act on the same vertex count")
    s_pi = _retained_domain(pi, idx1, idx2)
    s_pit = _retained_domain(pit, idx1, idx2)
    t_pi = np.sort(pi.image[s_pi])
    t_pit = np.sort(pit.image[s_pit])

    keys: list[EdgeKey] = []
    key_ids: dict[EdgeKey, int] = {}
    for key in itertools.chain(
        _pair_keys("L", s_pi),
        _pair_keys("L", s_pit),
        _pair_keys("R", t_pi),
        _pair_keys("R", t_pit),
    ):
        if key not in key_ids:
            key_ids[key] = len(keys)
            keys.append(key)

    parent = list(range(len(keys)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in itertools.combinations(sorted(s_pit), 2):
        a = find(key_ids[("L", int(u), int(v))])
        b = find(key_ids[("R", *_map_pair(pit, int(u), int(v)))])
        if a != b:
            parent[max(a, b)] = min(a, b)

    root_members: dict[int, list[EdgeKey]] = {}
    for i, key in enumerate(keys):
        root_members.setdefault(find(i), []).append(key)
    groups = sorted(
        (tuple(sorted(members)) for members in root_members.values()),
        key=lambda g: g[0],
    )
    group_of: dict[EdgeKey, int] = {}
    for gid, group in enumerate(groups):
        for key in group:
            group_of[key] = gid

    arcs = [
        (
            group_of[("L", int(u), int(v))],
            group_of[("R", *_map_pair(pi, int(u), int(v)))],
        )
        for u, v in itertools.combinations(sorted(s_pi), 2)
    ]
    return FunctionalDigraph(groups, arcs, s_pi, s_pit, t_pi, t_pit)


def decompose(d: FunctionalDigraph) -> Decomposition:
    """Split the digraph into its path and cycle components."""
    deg = d.degrees()
    if d.node_count and deg.max(initial=0) > 2:
        raise GraphCorrError("digraph node exceeds degree 2; construction is inconsistent")
    adjacency: list[list[int]] = [[] for _ in range(d.node_count)]
    self_loops = set()
    for u, v in d.arcs:
        if u == v:
            self_loops.add(u)
        else:
            adjacency[u].append(v)
            adjacency[v].append(u)

    visited = [False] * d.node_count
    paths: list[list[int]] = []
    cycles: list[list[int]] = []
    counts: list[int] = []

    def walk(start: int, first: int | None) -> list[int]:
        seq = [start]
        prev, node = start, first
        while node is not None and node != start:
            seq.append(node)
            nxt = [w for w in adjacency[node] if w != prev]
            prev, node = node, (nxt[0] if nxt else None)
        return seq

    for node in range(d.node_count):
        if visited[node]:
            continue
        if node in self_loops:
            visited[node] = True
            cycles.append([node])
            counts.append(sum(1 for key in d.groups[node] if key[0] == "L"))
            continue
        if deg[node] <= 1:  # endpoint of a path (possibly isolated)
            seq = walk(node, adjacency[node][0] if adjacency[node] else None)
            for x in seq:
                visited[x] = True
            paths.append(seq)
    for node in range(d.node_count):
        if visited[node]:
            continue
        # Remaining nodes all have degree 2: cycle components.
        seq = walk(node, adjacency[node][0])
        for x in seq:
            visited[x] = True
        cycles.append(seq)
        counts.append(
            sum(1 for x in seq for key in d.groups[x] if key[0] == "L")
        )
    return Decomposition(paths, cycles, counts)


def core_set(
    pi: Permutation, pit: Permutation, idx1: np.ndarray, idx2: np.ndarray
) -> CoreSet:
    """Maximum subset I of the retained side-1 vertices with pi(I) == pit(I).

    Valid sets are exactly the unions of orbits of sigma = pit^-1 . pi
    that stay inside the retained domain, so the maximum is their union.
    This is the vertex set covered by the digraph's cycles, plus any
    single-vertex agreements too small to span an edge.
    """
    if pi.n != pit.n:
        raise InvalidParameterError("permutations must act on the same vertex count")
    n = pi.n
    sigma = pit.inverse().image[pi.image]
    in_domain = np.zeros(n, dtype=bool)
    idx1 = np.asarray(idx1, dtype=np.int64)
    in_domain[idx1] = np.isin(pi.image[idx1], np.asarray(idx2, dtype=np.int64))
    visited = np.zeros(n, dtype=bool)
    members: list[int] = []
    for v0 in range(n):
        if visited[v0]:
            continue
        orbit = [v0]
        visited[v0] = True
        u = int(sigma[v0])
        while u != v0:
            orbit.append(u)
            visited[u] = True
            u = int(sigma[u])
        if all(in_domain[u] for u in orbit):
            members.extend(orbit)
    return CoreSet(np.sort(np.array(members, dtype=np.int64)))


# ---------------------------------------------------------------------------
# Monte Carlo estimators


def mc_component_expectation(
    kind: str, order: int, rho: float, trials: int, seed: int
) -> tuple[float, float]:
    """Monte Carlo mean of the likelihood-ratio product along a chain.

    ``kind="path"`` multiplies ``order`` ratio factors along an open
    chain of order+1 i.i.d. standard normals; ``kind="cycle"`` multiplies
    2*order factors along a closed chain of 2*order normals.  Returns
    (estimate, standard error).  Near rho -> 1 the cycle estimator is
    heavy-tailed and the reported standard error becomes unreliable.
    """
    if kind not in ("path", "cycle"):
        raise InvalidParameterError(f"kind must be 'path' or 'cycle', got {kind!r}")
    if order < 1:
        raise InvalidParameterError(f"order must be >= 1, got {order}")
    if trials < 1000:
        raise InvalidParameterError(f"need at least 1000 trials, got {trials}")
    rand = _rng.derive(seed, _rng.MC_COMPONENT)
    if kind == "path":
        b = rand.standard_normal((trials, order + 1))
        acc = np.ones(trials)
        for t in range(order):
            acc *= likelihood_ratio(b[:, t], b[:, t + 1], rho)
    else:
        k = 2 * order
        b = rand.standard_normal((trials, k))
        acc = np.ones(trials)
        for t in range(k):
            acc *= likelihood_ratio(b[:, t], b[:, (t + 1) % k], rho)
    estimate = float(acc.mean())
    std_error = float(acc.std(ddof=1) / math.sqrt(trials))
    return estimate, std_error


def sample_complexity_boundary(n: int, rho: float, constant: float) -> float:
    """Subgraph size sqrt(constant * max(n log n / log(1/(1-rho^2)), n)).

    Above this boundary detection is possible and below it impossible
    (up to the unspecified constants, supplied by the caller).
    """
    if n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    if not 0.0 < rho < 1.0:
        raise InvalidParameterError(f"rho must lie in (0, 1), got {rho}")
    if constant <= 0:
        raise InvalidParameterError(f"constant must be positive, got {constant}")
    rate = n * math.log(n) / math.log(1.0 / (1.0 - rho * rho))
    return math.sqrt(constant * max(rate, float(n)))


@dataclass(frozen=True)
class TailCheckResult:
    frequency: float
    bound: float
    std_error: float
    violation: bool


def core_set_tail_check(
    n: int, s: int, t: int, trials: int, seed: int
) -> TailCheckResult:
    """Empirical P(core set size == t) against the bound (s/n)^(2t).

    Draws independent uniform permutation pairs and vertex subsets,
    counts how often the core set has exactly t vertices, and flags a
    violation when the frequency exceeds the bound by more than three
    binomial standard errors.
    """
    if not 1 <= s <= n:
        raise InvalidParameterError(f"need 1 <= s <= n, got s={s}, n={n}")
    if not 0 <= t <= s:
        raise InvalidParameterError(f"need 0 <= t <= s, got t={t}")
    if trials < 1000:
        raise InvalidParameterError(f"need at least 1000 trials, got {trials}")
    rand = _rng.derive(seed, _rng.MC_TAIL)
    hits = 0
    arange = np.arange(n, dtype=np.int64)
    for _ in range(trials):
        pi_img = rand.permutation(n).astype(np.int64)
        pit_img = rand.permutation(n).astype(np.int64)
        idx1 = _rng.sample_subset(rand, n, s)
        idx2 = _rng.sample_subset(rand, n, s)
        pit_inv = np.empty(n, dtype=np.int64)
        pit_inv[pit_img] = arange
        sigma = pit_inv[pi_img]
        in_domain = np.zeros(n, dtype=bool)
        in_domain[idx1] = np.isin(pi_img[idx1], idx2)
        size = 0
        visited = np.zeros(n, dtype=bool)
        for v0 in range(n):
            if visited[v0]:
                continue
            ok = in_domain[v0]
            length = 1
            visited[v0] = True
            u = int(sigma[v0])
            while u != v0:
                ok = ok and in_domain[u]
                length += 1
                visited[u] = True
                u = int(sigma[u])
            if ok:
                size += length
        if size == t:
            hits += 1
    freq = hits / trials
    bound = (s / n) ** (2 * t)
    se = math.sqrt(freq * (1.0 - freq) / trials)
    return TailCheckResult(freq, bound, se, freq > bound + 3.0 * se)
