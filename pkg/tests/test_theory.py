"""Verification-toolkit tests.

Exact laws are checked against enumeration oracles, closed forms against
Monte Carlo, and the digraph machinery against generic graph searches,
all implemented locally in this file.
"""

import itertools
import math

import numpy as np
import pytest

from graphcorr import (
    InvalidParameterError,
    Permutation,
    build_digraph,
    core_set,
    core_set_tail_check,
    decompose,
    hypergeom_pmf,
    hypergeom_tail_bounds,
    likelihood_ratio,
    mc_component_expectation,
    mgf_mse,
    mgf_overlap,
    sample_complexity_boundary,
)
from graphcorr.rng import derive, sample_subset


class TestHypergeomPmf:
    def test_enumeration_oracle_n4(self):
        """All binom(4,2)^2 subset pairs, counted by overlap size."""
        subsets = list(itertools.combinations(range(4), 2))
        counts = {t: 0 for t in range(3)}
        for a in subsets:
            for b in subsets:
                counts[len(set(a) & set(b))] += 1
        total = len(subsets) ** 2
        for t in range(3):
            assert hypergeom_pmf(4, 2, t) == pytest.approx(counts[t] / total, abs=1e-12)

    def test_enumeration_oracle_n6(self):
        subsets = list(itertools.combinations(range(6), 3))
        counts = {t: 0 for t in range(4)}
        for a in subsets:
            for b in subsets:
                counts[len(set(a) & set(b))] += 1
        total = len(subsets) ** 2
        for t in range(4):
            assert hypergeom_pmf(6, 3, t) == pytest.approx(counts[t] / total, abs=1e-12)

    def test_full_sample_forces_full_overlap(self):
        assert hypergeom_pmf(5, 5, 5) == pytest.approx(1.0, abs=1e-12)

    def test_impossible_overlap_is_zero(self):
        assert hypergeom_pmf(10, 8, 2) == 0.0  # 8 - 2 > 10 - 8

    def test_sums_to_one_log_space(self):
        for n, s in [(20, 8), (100, 37), (1000, 250), (10_000, 400)]:
            total = sum(hypergeom_pmf(n, s, t) for t in range(s + 1))
            assert abs(total - 1.0) < 1e-12

    def test_parameter_validation(self):
        with pytest.raises(InvalidParameterError):
            hypergeom_pmf(4, 5, 1)
        with pytest.raises(InvalidParameterError):
            hypergeom_pmf(4, 2, 3)


class TestHypergeomTailBounds:
    def test_dominates_exact_tails(self):
        n, s = 50, 25
        mean = s * s / n
        for eps in (0.01, 0.1, 0.5):
            upper, lower = hypergeom_tail_bounds(n, s, eps)
            hi = sum(hypergeom_pmf(n, s, t) for t in range(s + 1) if t >= (1 + eps) * mean)
            lo = sum(hypergeom_pmf(n, s, t) for t in range(s + 1) if t <= (1 - eps) * mean)
            assert hi <= upper
            assert lo <= lower

    def test_monotone_to_zero(self):
        values = [hypergeom_tail_bounds(50, 25, eps) for eps in (0.5, 1.0, 2.0, 5.0)]
        uppers = [v[0] for v in values]
        lowers = [v[1] for v in values]
        assert all(a >= b for a, b in zip(uppers, uppers[1:]))
        assert all(a >= b for a, b in zip(lowers, lowers[1:]))
        assert uppers[-1] < 1e-4

    def test_matches_stated_exponentials(self):
        n, s, eps = 100, 10, 0.5
        upper, lower = hypergeom_tail_bounds(n, s, eps)
        hoeffding = math.exp(-(eps**2) * s**3 / n**2)
        assert upper == pytest.approx(min(math.exp(-(eps**2) * s * s / ((2 + eps) * n)), hoeffding))
        assert lower == pytest.approx(min(math.exp(-(eps**2) * s * s / (2 * n)), hoeffding))


class TestMgfs:
    def test_values(self):
        assert mgf_overlap(0.0) == 1.0
        assert mgf_overlap(0.3) == pytest.approx(1 / math.sqrt(0.91), rel=1e-12)
        assert mgf_mse(0.0) == 1.0
        assert mgf_mse(1.5) == pytest.approx(0.5, rel=1e-12)

    def test_domains(self):
        with pytest.raises(InvalidParameterError):
            mgf_overlap(1.0)
        with pytest.raises(InvalidParameterError):
            mgf_mse(-0.5)

    @pytest.mark.parametrize("lam", [0.1, 0.3, 0.6])
    def test_overlap_monte_carlo(self, lam):
        rng = np.random.default_rng(52 + int(lam * 10))
        trials = 200_000
        x = rng.standard_normal(trials)
        y = rng.standard_normal(trials)
        vals = np.exp(lam * x * y)
        se = vals.std(ddof=1) / math.sqrt(trials)
        assert abs(vals.mean() - mgf_overlap(lam)) <= 3 * se

    @pytest.mark.parametrize("lam", [0.5, 1.5, 5.0])
    def test_mse_monte_carlo(self, lam):
        rng = np.random.default_rng(62 + int(lam * 10))
        trials = 200_000
        x = rng.standard_normal(trials)
        y = rng.standard_normal(trials)
        vals = np.exp(-0.5 * lam * (x - y) ** 2)
        se = vals.std(ddof=1) / math.sqrt(trials)
        assert abs(vals.mean() - mgf_mse(lam)) <= 3 * se


class TestLikelihoodRatio:
    def test_at_origin(self):
        for rho in (0.3, 0.7):
            assert likelihood_ratio(0.0, 0.0, rho) == pytest.approx(
                1 / math.sqrt(1 - rho * rho), rel=1e-12
            )

    def test_hand_value(self):
        got = likelihood_ratio(1.0, 1.0, 0.5)
        assert got == pytest.approx(math.exp(1 / 3) / math.sqrt(0.75), rel=1e-12)
        assert got == pytest.approx(1.6117, abs=1e-3)

    def test_normalizes_under_independence(self):
        rng = np.random.default_rng(72)
        trials = 200_000
        x = rng.standard_normal(trials)
        y = rng.standard_normal(trials)
        vals = likelihood_ratio(x, y, 0.5)
        se = vals.std(ddof=1) / math.sqrt(trials)
        assert abs(vals.mean() - 1.0) <= 3 * se

    def test_positive(self):
        rng = np.random.default_rng(73)
        x, y = rng.standard_normal(2)
        assert likelihood_ratio(x, y, 0.9) > 0

    def test_rho_validation(self):
        with pytest.raises(InvalidParameterError):
            likelihood_ratio(0.0, 0.0, 0.0)


def oracle_components(n_nodes, arcs):
    """Generic BFS connected components over undirected arc multiset."""
    adj = {i: set() for i in range(n_nodes)}
    for u, v in arcs:
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    comps = []
    for start in range(n_nodes):
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        seen |= comp
        comps.append(frozenset(comp))
    return set(comps)


def random_instance(rng, n_lo=4, n_hi=8, s_hi=5):
    n = int(rng.integers(n_lo, n_hi + 1))
    s = int(rng.integers(2, min(s_hi, n) + 1))
    pi = Permutation(rng.permutation(n).astype(np.int64))
    pit = Permutation(rng.permutation(n).astype(np.int64))
    idx1 = sample_subset(rng, n, s)
    idx2 = sample_subset(rng, n, s)
    return n, s, pi, pit, idx1, idx2


class TestDigraph:
    def test_equal_permutations_all_unit_cycles(self):
        n = 6
        pi = Permutation.identity(n)
        idx = np.arange(4)
        d = build_digraph(pi, pi, idx, idx)
        dec = decompose(d)
        assert dec.paths == []
        assert len(dec.cycles) == math.comb(4, 2)
        assert all(c == 1 for c in dec.cycle_side1_counts)

    def test_disjoint_retained_domains_all_paths(self):
        """pit keeps no vertices, so nothing merges and every arc is a path."""
        n = 8
        pi = Permutation.identity(n)
        pit = Permutation(np.array([4, 5, 6, 7, 0, 1, 2, 3]))
        idx1 = np.array([0, 1, 2])
        idx2 = np.array([0, 1, 2])
        d = build_digraph(pi, pit, idx1, idx2)
        dec = decompose(d)
        assert dec.cycles == []
        assert len(dec.paths) == math.comb(3, 2)  # one two-node path per arc
        assert all(len(p) == 2 for p in dec.paths)

    def test_degree_bound_and_partition(self, rand):
        for _ in range(150):
            n, s, pi, pit, idx1, idx2 = random_instance(rand)
            d = build_digraph(pi, pit, idx1, idx2)
            assert d.degrees().max(initial=0) <= 2
            dec = decompose(d)
            covered = sorted(x for comp in dec.paths + dec.cycles for x in comp)
            assert covered == list(range(d.node_count))

    def test_components_match_bfs_oracle(self, rand):
        for _ in range(100):
            n, s, pi, pit, idx1, idx2 = random_instance(rand)
            d = build_digraph(pi, pit, idx1, idx2)
            dec = decompose(d)
            got = {frozenset(c) for c in dec.paths} | {frozenset(c) for c in dec.cycles}
            assert got == oracle_components(d.node_count, d.arcs)

    def test_cycle_side_counts_balanced(self, rand):
        """Each cycle holds as many side-1 as side-2 edge identifiers."""
        for _ in range(100):
            n, s, pi, pit, idx1, idx2 = random_instance(rand)
            d = build_digraph(pi, pit, idx1, idx2)
            dec = decompose(d)
            for comp, count in zip(dec.cycles, dec.cycle_side1_counts):
                side2 = sum(1 for x in comp for key in d.groups[x] if key[0] == "R")
                assert count == side2 > 0


def oracle_core(pi, pit, idx1, idx2):
    """Exhaustive maximum agreement set with the image constraint."""
    idx2_set = {int(v) for v in idx2}
    cand = [
        int(v)
        for v in idx1
        if int(pi.image[v]) in idx2_set and int(pit.image[v]) in idx2_set
    ]
    for r in range(len(cand), 0, -1):
        for combo in itertools.combinations(cand, r):
            if {int(pi.image[v]) for v in combo} == {int(pit.image[v]) for v in combo}:
                return set(combo)
    return set()


class TestCoreSet:
    def test_equal_permutations_full_sample(self):
        n = 5
        pi = Permutation.identity(n)
        idx = np.arange(n)
        got = core_set(pi, pi, idx, idx)
        assert got.vertices.tolist() == list(range(n))

    def test_set_agreement_without_pointwise_agreement(self):
        """A full orbit agrees as a set even with zero fixed points."""
        n = 4
        pi = Permutation.identity(n)
        pit = Permutation(np.array([1, 2, 3, 0]))
        idx = np.arange(n)
        got = core_set(pi, pit, idx, idx)
        assert set(got.vertices.tolist()) == set(range(n))

    def test_broken_orbit_gives_empty_core(self):
        """Restricting the sample so the orbit escapes empties the core."""
        pi = Permutation.identity(4)
        pit = Permutation(np.array([1, 2, 3, 0]))
        idx = np.array([0, 1])
        got = core_set(pi, pit, idx, idx)
        assert got.size == 0

    def test_matches_exhaustive_oracle(self, rand):
        for _ in range(300):
            n, s, pi, pit, idx1, idx2 = random_instance(rand)
            got = set(int(v) for v in core_set(pi, pit, idx1, idx2).vertices)
            assert got == oracle_core(pi, pit, idx1, idx2)

    def test_image_agreement(self, rand):
        for _ in range(100):
            n, s, pi, pit, idx1, idx2 = random_instance(rand)
            verts = core_set(pi, pit, idx1, idx2).vertices
            assert {int(pi.image[v]) for v in verts} == {int(pit.image[v]) for v in verts}

    def test_cycle_vertices_subset_of_core(self, rand):
        """Vertices covered by digraph cycles always lie in the core set."""
        for _ in range(100):
            n, s, pi, pit, idx1, idx2 = random_instance(rand)
            d = build_digraph(pi, pit, idx1, idx2)
            dec = decompose(d)
            core = set(int(v) for v in core_set(pi, pit, idx1, idx2).vertices)
            for comp in dec.cycles:
                for node in comp:
                    for side, u, v in d.groups[node]:
                        if side == "L":
                            assert {u, v} <= core


class TestComponentExpectations:
    def test_path_is_unit_mean(self):
        est, se = mc_component_expectation("path", 2, 0.5, 1_000_000, seed=0)
        assert abs(est - 1.0) <= 3 * se

    @pytest.mark.parametrize("order", [1, 2, 3])
    @pytest.mark.parametrize("rho", [0.3, 0.5])
    def test_cycle_targets(self, rho, order):
        est, se = mc_component_expectation("cycle", order, rho, 1_000_000, seed=0)
        assert abs(est - 1.0 / (1.0 - rho ** (2 * order))) <= 3 * se

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_cycle_targets_heavy_tail_regime(self, order):
        """At rho=0.7 the product has tail index < 1.3, so the sample mean
        undershoots and the reported standard error is unreliable; a
        relative band is the strongest stable statement."""
        rho = 0.7
        target = 1.0 / (1.0 - rho ** (2 * order))
        est, _ = mc_component_expectation("cycle", order, rho, 1_000_000, seed=0)
        assert abs(est - target) <= 0.1 * target

    def test_validation(self):
        with pytest.raises(InvalidParameterError):
            mc_component_expectation("loop", 1, 0.5, 2000, seed=0)
        with pytest.raises(InvalidParameterError):
            mc_component_expectation("path", 0, 0.5, 2000, seed=0)
        with pytest.raises(InvalidParameterError):
            mc_component_expectation("path", 1, 0.5, 10, seed=0)


class TestSampleComplexityBoundary:
    def test_strong_correlation_limit(self):
        # log(1/(1-rho^2)) far above log n: the flat n term dominates.
        got = sample_complexity_boundary(50, 0.9999999999, 1.0)
        assert got == pytest.approx(math.sqrt(50), rel=1e-6)

    def test_terms_equalize(self):
        n = 50
        rho = math.sqrt(1 - 1 / n)  # log(1/(1-rho^2)) == log n
        assert sample_complexity_boundary(n, rho, 1.0) == pytest.approx(math.sqrt(n), rel=1e-9)

    def test_monotone_nonincreasing_in_rho(self):
        vals = [sample_complexity_boundary(50, r, 2.0) for r in np.linspace(0.05, 0.995, 40)]
        assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))


class TestCoreSetTailCheck:
    def test_t_zero_bound_is_one(self):
        res = core_set_tail_check(10, 4, 0, 2000, seed=1)
        assert res.bound == 1.0
        assert not res.violation

    def test_full_sample_vacuous_bound(self):
        res = core_set_tail_check(6, 6, 1, 2000, seed=2)
        assert res.bound == 1.0
        assert not res.violation

    def test_small_scale_bound_holds(self):
        res = core_set_tail_check(10, 4, 1, 20_000, seed=3)
        assert not res.violation
        assert res.frequency <= res.bound + 3 * res.std_error
