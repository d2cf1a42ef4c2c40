import numpy as np
import pytest

from graphcorr import Hypothesis, generate_pair, sample_subgraphs


@pytest.fixture
def rand():
    """Fixed RNG for reproducible randomized tests."""
    return np.random.default_rng(20240811)


@pytest.fixture
def small_alt_sample():
    """A correlated pair with mid-size subgraphs, shared across tests."""
    pair = generate_pair(20, 0.9, Hypothesis.ALT, seed=1234)
    return pair, sample_subgraphs(pair, 8, seed=77)
