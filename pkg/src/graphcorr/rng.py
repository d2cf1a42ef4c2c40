"""Deterministic random-stream derivation.

Every randomized operation takes a 64-bit root seed and derives labeled
sub-streams from it, so that e.g. changing the subgraph size never
perturbs the graph weights drawn from the same root seed.  Streams are
numpy PCG64 generators keyed by ``SeedSequence((seed, *labels))``, which
is stable across platforms and processes.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Fixed stream labels.  Values are arbitrary but frozen: changing them
# changes every derived stream.
WEIGHTS = 1
LATENT_PERM = 2
SUBSET_1 = 3
SUBSET_2 = 4
CLIQUE_SETS = 5
TRIAL_PAIR = 10
TRIAL_SAMPLE = 11
TRIAL_ALGO = 12
MC_COMPONENT = 20
MC_TAIL = 21


def derive(seed: int, *labels: int) -> np.random.Generator:
    """Return the generator for the sub-stream of ``seed`` named by ``labels``."""
    entropy = [int(seed) & _MASK64] + [int(x) & _MASK64 for x in labels]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def sample_subset(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    """Draw a uniform ``size``-subset of ``range(n)`` by partial Fisher-Yates.

    The result is returned sorted ascending so the draw order never leaks
    into downstream logic.
    """
    if not 0 <= size <= n:
        raise ValueError(f"cannot draw {size} items from {n}")
    if size == 0:
        return np.empty(0, dtype=np.int64)
    highs = np.arange(n, n - size, -1, dtype=np.int64)
    offsets = rng.integers(0, highs)
    arr = np.arange(n, dtype=np.int64)
    for i in range(size):
        j = i + int(offsets[i])
        arr[i], arr[j] = arr[j], arr[i]
    out = arr[:size]
    out.sort()
    return out
