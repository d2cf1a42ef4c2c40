"""Compiled-core vs pure-Python parity.

Both backends must produce identical mappings and matching scores on the
same inputs; scores may differ only by floating-point summation order.
"""

import itertools

import numpy as np
import pytest

from graphcorr import MSE, OVERLAP, Hypothesis, generate_pair, mle_kernel, sample_subgraphs
from graphcorr import _core

pytestmark = pytest.mark.skipif(
    _core.fastcore is None, reason="compiled core not built"
)

KERNELS = [OVERLAP, MSE, mle_kernel(0.8)]


def clique_inputs(sample, k1, n1, f, seed):
    from graphcorr.clique import _sample_distinct_subsets
    from graphcorr import rng as _rng
    import math

    subsets = _sample_distinct_subsets(
        _rng.derive(seed, _rng.CLIQUE_SETS), sample.s, k1, n1, math.comb(sample.s, k1)
    )
    cxy, cxx, cyy = f.coefficients()
    a, b = np.triu_indices(k1, k=1)
    dw = sample.sub1.weights[subsets[:, a], subsets[:, b]]
    gammas = np.ascontiguousarray(cxy * dw)
    consts = np.ascontiguousarray(cxx * np.sum(dw * dw, axis=1))
    rmat = np.ascontiguousarray(sample.sub2.weights)
    pmat = np.ascontiguousarray(cyy * sample.sub2.weights**2)
    return rmat, pmat, gammas, consts


@pytest.fixture
def sample():
    pair = generate_pair(16, 0.9, Hypothesis.ALT, seed=404)
    return sample_subgraphs(pair, 7, seed=2)


@pytest.mark.parametrize("k1", [2, 3, 4, 5])
@pytest.mark.parametrize("f", KERNELS)
def test_clique_search_parity(sample, k1, f):
    rmat, pmat, gammas, consts = clique_inputs(sample, k1, 12, f, seed=11)
    s_fast, i_fast = _core.fastcore.match_cliques_batch(rmat, pmat, gammas, consts, k1)
    s_py, i_py = _core.pycore.match_cliques_batch(rmat, pmat, gammas, consts, k1)
    np.testing.assert_allclose(s_fast, s_py, rtol=1e-10, atol=1e-12)
    np.testing.assert_array_equal(i_fast, i_py)


@pytest.mark.parametrize("k2", [1, 2, 3])
def test_seed_search_parity(sample, k2):
    from graphcorr.clique import match_cliques, select_top

    top = select_top(match_cliques(sample.sub1, sample.sub2, 3, 20, MSE, seed=5), 10)
    doms = np.ascontiguousarray(np.array([m.mapping.domain for m in top]))
    imgs = np.ascontiguousarray(np.array([m.mapping.image for m in top]))
    compat_f = _core.fastcore.pairwise_compatible(doms, imgs)
    compat_p = _core.pycore.pairwise_compatible(doms, imgs)
    np.testing.assert_array_equal(compat_f, compat_p)
    compat_u8 = np.ascontiguousarray(compat_f.view(np.uint8))
    w1 = np.ascontiguousarray(sample.sub1.weights)
    w2 = np.ascontiguousarray(sample.sub2.weights)
    res_f = _core.fastcore.seed_search(doms, imgs, compat_u8, w1, w2, 1.0, -0.5, -0.5, k2)
    res_p = _core.pycore.seed_search(doms, imgs, compat_u8, w1, w2, 1.0, -0.5, -0.5, k2)
    assert res_f[0] == res_p[0]
    assert res_f[1] == res_p[1]
    assert res_f[2] == pytest.approx(res_p[2], rel=1e-10)


@pytest.mark.parametrize("f", KERNELS)
def test_exact_search_parity(sample, f):
    perms = np.array(list(itertools.permutations(range(3))), dtype=np.int64)
    cxy, cxx, cyy = f.coefficients()
    w1 = np.ascontiguousarray(sample.sub1.weights)
    w2 = np.ascontiguousarray(sample.sub2.weights)
    best_f, dom_f, img_f = _core.fastcore.exact_search(w1, w2, 3, cxy, cxx, cyy, perms)
    best_p, dom_p, img_p = _core.pycore.exact_search(w1, w2, 3, cxy, cxx, cyy, perms)
    assert best_f == pytest.approx(best_p, rel=1e-10)
    assert dom_f == dom_p
    assert img_f == img_p


def test_forced_python_backend_env(tmp_path):
    """GRAPHCORR_FORCE_PYTHON selects the fallback at import time."""
    import subprocess
    import sys

    code = "import graphcorr; print(graphcorr.backend_name())"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "GRAPHCORR_FORCE_PYTHON": "1"},
    )
    assert out.stdout.strip() == "python"
