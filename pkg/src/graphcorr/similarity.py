"""Bivariate edge kernels and similarity scores for partial injections.

A partial injection pi maps a subset of sub1's vertices into sub2's.
Its similarity score sums f(w1[u, v], w2[pi(u), pi(v)]) over the
unordered pairs {u, v} inside pi's domain, for one of three kernels:

* ``overlap``        f(x, y) = x * y
* ``mse``            f(x, y) = -(x - y)^2 / 2
* ``mle``            f(x, y) = -rho^2 (x^2 + y^2) + 2 rho x y

All three are quadratic forms c_xy*x*y + c_xx*x^2 + c_yy*y^2, which the
scoring fast paths exploit.  The mle kernel carries the detector's own
assumed rho, which need not equal the instance's true correlation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidMappingError, InvalidParameterError
from .model import WeightedGraph

_KINDS = ("overlap", "mse", "mle")


@dataclass(frozen=True)
class SimilarityKernel:
    kind: str
    rho: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidParameterError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "mle":
            if self.rho is None or not 0.0 < self.rho < 1.0:
                raise InvalidParameterError("mle kernel needs rho in (0, 1)")
        elif self.rho is not None:
            raise InvalidParameterError(f"{self.kind} kernel takes no rho")

    def coefficients(self) -> tuple[float, float, float]:
        """(c_xy, c_xx, c_yy) with f(x, y) = c_xy*x*y + c_xx*x^2 + c_yy*y^2."""
        if self.kind == "overlap":
            return 1.0, 0.0, 0.0
        if self.kind == "mse":
            return 1.0, -0.5, -0.5
        r = float(self.rho)
        return 2.0 * r, -r * r, -r * r


OVERLAP = SimilarityKernel("overlap")
MSE = SimilarityKernel("mse")


def mle_kernel(rho: float) -> SimilarityKernel:
    return SimilarityKernel("mle", rho)


def kernel_eval(f: SimilarityKernel, x: float, y: float) -> float:
    """Evaluate the kernel from its defining formula."""
    if f.kind == "overlap":
        return x * y
    if f.kind == "mse":
        d = x - y
        return -0.5 * d * d
    r = f.rho
    return -r * r * (x * x + y * y) + 2.0 * r * x * y


@dataclass(frozen=True)
class PartialInjection:
    """Positional injective mapping: domain[k] maps to image[k]."""

    domain: np.ndarray
    image: np.ndarray

    def __post_init__(self):
        dom = np.asarray(self.domain, dtype=np.int64)
        img = np.asarray(self.image, dtype=np.int64)
        if dom.ndim != 1 or img.ndim != 1 or dom.shape != img.shape:
            raise InvalidParameterError("domain and image must be 1-d and equally long")
        if np.unique(dom).shape != dom.shape or np.unique(img).shape != img.shape:
            raise InvalidParameterError("domain and image entries must be distinct")
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "image", img)

    @property
    def size(self) -> int:
        return int(self.domain.shape[0])

    def sorted_by_domain(self) -> "PartialInjection":
        order = np.argsort(self.domain)
        return PartialInjection(self.domain[order], self.image[order])

    def as_dict(self) -> dict[int, int]:
        return {int(u): int(v) for u, v in zip(self.domain, self.image)}


def _check_bounds(pi: PartialInjection, sub1: WeightedGraph, sub2: WeightedGraph) -> None:
    if pi.size == 0:
        return
    if pi.domain.min() < 0 or pi.domain.max() >= sub1.n:
        raise InvalidMappingError("mapping domain outside sub1's vertex range")
    if pi.image.min() < 0 or pi.image.max() >= sub2.n:
        raise InvalidMappingError("mapping image outside sub2's vertex range")


def similarity_score(
    f: SimilarityKernel, sub1: WeightedGraph, sub2: WeightedGraph, pi: PartialInjection
) -> float:
    """Total f-similarity over the unordered pairs inside pi's domain.

    Mappings with fewer than two vertices span no edges and score 0.
    """
    _check_bounds(pi, sub1, sub2)
    if pi.size < 2:
        return 0.0
    m1 = sub1.weights[np.ix_(pi.domain, pi.domain)]
    m2 = sub2.weights[np.ix_(pi.image, pi.image)]
    iu = np.triu_indices(pi.size, k=1)
    x = m1[iu]
    y = m2[iu]
    cxy, cxx, cyy = f.coefficients()
    return float(cxy * np.dot(x, y) + cxx * np.dot(x, x) + cyy * np.dot(y, y))


def normalized_score(
    f: SimilarityKernel,
    sub1: WeightedGraph,
    sub2: WeightedGraph,
    pi: PartialInjection,
    s: int,
) -> float:
    """Similarity score divided by binom(s, 2), the dense-graph edge count."""
    if s < 2:
        raise InvalidParameterError(f"normalization needs s >= 2, got {s}")
    return similarity_score(f, sub1, sub2, pi) / math.comb(s, 2)
