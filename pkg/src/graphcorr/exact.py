"""Brute-force test statistic, detection thresholds, and the decision rule.

The exact statistic maximizes the similarity score over every injective
mapping of a fixed size m: all domain m-subsets of sub1, all image
m-subsets of sub2, and all m! pairings between them.  It is an oracle
for validating heuristics, not a fast solver, so a hard evaluation
budget guards against accidentally enormous searches.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _core
from .errors import InfeasibleError, InvalidParameterError
from .model import WeightedGraph
from .similarity import PartialInjection, SimilarityKernel


@dataclass(frozen=True)
class ExactBudget:
    """Cap on the number of mapping evaluations an exact search may spend."""

    max_evaluations: int = 10**8

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise InvalidParameterError("budget must allow at least one evaluation")


class Decision(enum.Enum):
    REJECT_NULL = "reject"
    ACCEPT_NULL = "accept"


def enumeration_size(s1: int, s2: int, m: int) -> int:
    """Number of size-m injections between graphs of s1 and s2 vertices."""
    return math.comb(s1, m) * math.comb(s2, m) * math.factorial(m)


def enumerate_max_score(
    sub1: WeightedGraph,
    sub2: WeightedGraph,
    m: int,
    f: SimilarityKernel,
    budget: ExactBudget = ExactBudget(),
) -> tuple[float, PartialInjection]:
    """Exact maximum of the similarity score over all size-m injections.

    Ties resolve to the lexicographically smallest (domain, image,
    pairing); enumeration visits candidates in that order and only a
    strictly greater score replaces the incumbent.
    """
    s1, s2 = sub1.n, sub2.n
    if not 2 <= m <= min(s1, s2):
        raise InvalidParameterError(f"mapping size {m} must lie in [2, {min(s1, s2)}]")
    required = enumeration_size(s1, s2, m)
    if required > budget.max_evaluations:
        raise InfeasibleError(
            f"exact search needs {required} mapping evaluations, "
            f"budget allows {budget.max_evaluations}"
        )
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.int64)
    cxy, cxx, cyy = f.coefficients()
    best, dom, img = _core.active.exact_search(
        np.ascontiguousarray(sub1.weights),
        np.ascontiguousarray(sub2.weights),
        m,
        cxy,
        cxx,
        cyy,
        perms,
    )
    return float(best), PartialInjection(np.array(dom), np.array(img))


def threshold_overlap(m: int, rho: float) -> float:
    """Rejection threshold binom(m, 2) * rho / 2 for the overlap statistic."""
    if m < 2:
        raise InvalidParameterError(f"threshold needs m >= 2, got {m}")
    if not 0.0 < rho < 1.0:
        raise InvalidParameterError(f"rho must lie in (0, 1), got {rho}")
    return math.comb(m, 2) * rho / 2.0


def threshold_mse(m: int, rho: float) -> float:
    """Rejection threshold 2 * binom(m, 2) * (rho - 1), always negative."""
    if m < 2:
        raise InvalidParameterError(f"threshold needs m >= 2, got {m}")
    if not 0.0 < rho < 1.0:
        raise InvalidParameterError(f"rho must lie in (0, 1), got {rho}")
    return 2.0 * math.comb(m, 2) * (rho - 1.0)


def decide(statistic: float, tau: float) -> Decision:
    """Reject the null exactly when the statistic reaches the threshold."""
    return Decision.REJECT_NULL if statistic >= tau else Decision.ACCEPT_NULL
