"""Self-contained verification battery behind the ``theory-check`` command.

Each check pits a closed form or structural claim against an
independent computation (exhaustive enumeration, Monte Carlo, or exact
tail sums) and reports one pass/fail line.  Monte Carlo identities use
a three-standard-error band, so a handful of reruns with fresh seeds
may occasionally flip a line without indicating a defect.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import rng as _rng
from . import theory
from .model import Hypothesis, Permutation, common_vertex_sets, generate_pair, sample_subgraphs


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _exhaustive_core(pi: Permutation, pit: Permutation, idx1, idx2) -> set[int]:
    """Largest I inside both retained domains with pi(I) == pit(I) as sets."""
    idx2_set = set(int(v) for v in idx2)
    candidates = [
        int(v)
        for v in idx1
        if int(pi.image[v]) in idx2_set and int(pit.image[v]) in idx2_set
    ]
    best: set[int] = set()
    for r in range(len(candidates), 0, -1):
        for combo in itertools.combinations(candidates, r):
            if {int(pi.image[v]) for v in combo} == {int(pit.image[v]) for v in combo}:
                return set(combo)
    return best


def _check_pmf_normalization() -> CheckResult:
    worst = 0.0
    for n, s in [(4, 2), (20, 8), (50, 25), (200, 40), (1000, 100)]:
        total = sum(theory.hypergeom_pmf(n, s, t) for t in range(s + 1))
        worst = max(worst, abs(total - 1.0))
    return CheckResult(
        "hypergeometric pmf sums to 1", worst < 1e-12, f"max |sum-1| = {worst:.2e}"
    )


def _check_pmf_enumeration() -> CheckResult:
    n, s = 6, 3
    counts = np.zeros(s + 1)
    subsets = list(itertools.combinations(range(n), s))
    for a in subsets:
        for b in subsets:
            counts[len(set(a) & set(b))] += 1
    counts /= counts.sum()
    worst = max(abs(counts[t] - theory.hypergeom_pmf(n, s, t)) for t in range(s + 1))
    return CheckResult(
        "pmf matches subset-pair enumeration", worst < 1e-12, f"max error = {worst:.2e}"
    )


def _check_tail_bounds() -> CheckResult:
    ok = True
    details = []
    for n, s, eps in [(50, 25, 0.01), (50, 25, 0.2), (100, 10, 0.5)]:
        upper, lower = theory.hypergeom_tail_bounds(n, s, eps)
        mean = s * s / n
        hi = sum(theory.hypergeom_pmf(n, s, t) for t in range(s + 1) if t >= (1 + eps) * mean)
        lo = sum(theory.hypergeom_pmf(n, s, t) for t in range(s + 1) if t <= (1 - eps) * mean)
        ok = ok and hi <= upper and lo <= lower
        details.append(f"(n={n},s={s},eps={eps}): {hi:.3g}<={upper:.3g}, {lo:.3g}<={lower:.3g}")
    return CheckResult("tail bounds dominate exact tails", ok, "; ".join(details))


def _mc_band(name: str, estimate: float, se: float, target: float) -> CheckResult:
    dev = abs(estimate - target)
    return CheckResult(name, dev <= 3.0 * se, f"est {estimate:.5f}, target {target:.5f}, 3se {3 * se:.5f}")


def _check_mgfs(trials: int, seed: int) -> list[CheckResult]:
    rand = _rng.derive(seed, 31)
    out = []
    lam = 0.3
    x = rand.standard_normal(trials)
    y = rand.standard_normal(trials)
    vals = np.exp(lam * x * y)
    out.append(
        _mc_band(
            f"mgf_overlap({lam}) vs Monte Carlo",
            float(vals.mean()),
            float(vals.std(ddof=1) / math.sqrt(trials)),
            theory.mgf_overlap(lam),
        )
    )
    lam = 1.5
    vals = np.exp(-0.5 * lam * (x - y) ** 2)
    out.append(
        _mc_band(
            f"mgf_mse({lam}) vs Monte Carlo",
            float(vals.mean()),
            float(vals.std(ddof=1) / math.sqrt(trials)),
            theory.mgf_mse(lam),
        )
    )
    vals = theory.likelihood_ratio(x, y, 0.5)
    out.append(
        _mc_band(
            "likelihood ratio integrates to 1",
            float(vals.mean()),
            float(vals.std(ddof=1) / math.sqrt(trials)),
            1.0,
        )
    )
    return out


def _check_components(trials: int, seed: int) -> list[CheckResult]:
    rho = 0.5
    out = []
    for kind, order, target in [
        ("path", 2, 1.0),
        ("cycle", 1, 1.0 / (1.0 - rho**2)),
        ("cycle", 2, 1.0 / (1.0 - rho**4)),
    ]:
        est, se = theory.mc_component_expectation(kind, order, rho, trials, seed + order)
        out.append(_mc_band(f"E[L] for {kind}({order}) at rho={rho}", est, se, target))
    return out


def _check_core_oracle(instances: int, seed: int) -> CheckResult:
    rand = _rng.derive(seed, 32)
    for _ in range(instances):
        n = int(rand.integers(4, 9))
        s = int(rand.integers(2, min(5, n) + 1))
        pi = Permutation(rand.permutation(n).astype(np.int64))
        pit = Permutation(rand.permutation(n).astype(np.int64))
        idx1 = _rng.sample_subset(rand, n, s)
        idx2 = _rng.sample_subset(rand, n, s)
        got = set(int(v) for v in theory.core_set(pi, pit, idx1, idx2).vertices)
        want = _exhaustive_core(pi, pit, idx1, idx2)
        if got != want:
            return CheckResult(
                "core set equals exhaustive argmax",
                False,
                f"mismatch at n={n}, s={s}: got {sorted(got)}, want {sorted(want)}",
            )
    return CheckResult(
        "core set equals exhaustive argmax", True, f"{instances} random instances"
    )


def _check_core_tail(trials: int, seed: int) -> list[CheckResult]:
    out = []
    for t in (1, 2):
        res = theory.core_set_tail_check(10, 4, t, trials, seed + t)
        out.append(
            CheckResult(
                f"core-set tail bound at t={t}",
                not res.violation,
                f"freq {res.frequency:.5f} <= bound {res.bound:.5f} + 3se {3 * res.std_error:.5f}",
            )
        )
    return out


def _check_digraph_structure(instances: int, seed: int) -> CheckResult:
    rand = _rng.derive(seed, 33)
    for _ in range(instances):
        n = int(rand.integers(4, 9))
        s = int(rand.integers(2, min(5, n) + 1))
        pi = Permutation(rand.permutation(n).astype(np.int64))
        pit = Permutation(rand.permutation(n).astype(np.int64))
        idx1 = _rng.sample_subset(rand, n, s)
        idx2 = _rng.sample_subset(rand, n, s)
        d = theory.build_digraph(pi, pit, idx1, idx2)
        if d.node_count and d.degrees().max(initial=0) > 2:
            return CheckResult("digraph decomposes into paths and cycles", False, "degree > 2")
        dec = theory.decompose(d)
        covered = sorted(x for comp in dec.paths + dec.cycles for x in comp)
        if covered != list(range(d.node_count)):
            return CheckResult(
                "digraph decomposes into paths and cycles", False, "components do not partition"
            )
    return CheckResult(
        "digraph decomposes into paths and cycles", True, f"{instances} random instances"
    )


def _check_overlap_law(trials: int, seed: int) -> CheckResult:
    n, s = 20, 8
    pair = generate_pair(n, 0.5, Hypothesis.ALT, seed)
    counts = np.zeros(s + 1, dtype=np.int64)
    for i in range(trials):
        sample = sample_subgraphs(pair, s, _subseed_for(seed, i))
        s_loc, _ = common_vertex_sets(sample, pair.latent_perm)
        counts[len(s_loc)] += 1
    emp = counts / trials
    tv = 0.5 * sum(abs(emp[t] - theory.hypergeom_pmf(n, s, t)) for t in range(s + 1))
    # 0.02 is calibrated for 1e5 draws; scale for smaller runs.
    limit = 0.02 * max(1.0, math.sqrt(100_000 / trials))
    return CheckResult(
        f"overlap-size law matches HG({n},{s},{s})",
        tv < limit,
        f"TV = {tv:.4f} < {limit:.4f} over {trials} draws",
    )


def _subseed_for(seed: int, i: int) -> int:
    seq = np.random.SeedSequence([int(seed) & ((1 << 64) - 1), 34, i])
    return int(seq.generate_state(1, np.uint64)[0])


def verification_battery(trials: int, seed: int) -> list[CheckResult]:
    """Run every check; heavy Monte Carlo loops use ``trials`` samples."""
    law_trials = min(trials, 100_000)
    results = [
        _check_pmf_normalization(),
        _check_pmf_enumeration(),
        _check_tail_bounds(),
        *_check_mgfs(trials, seed),
        *_check_components(trials, seed),
        _check_core_oracle(200, seed),
        *_check_core_tail(law_trials, seed),
        _check_digraph_structure(100, seed),
        _check_overlap_law(law_trials, seed),
    ]
    return results
