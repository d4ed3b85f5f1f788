import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spectral_maxcut import generators as G
from spectral_maxcut.eigen import lambda_min, power_iterations, rayleigh_quotient, smallest_eigvec
from spectral_maxcut.graph import WeightedGraph

from conftest import dense_lambda_min

C5_MIN = 1 - math.cos(math.pi / 5)  # 0.190983...
METHODS = ["power", "lanczos", "dense"]


@pytest.mark.parametrize("method", METHODS)
def test_c4(method):
    e = smallest_eigvec(G.cycle(4), 0.01, seed=1, method=method)
    assert e.eps_x <= 0.01
    s = np.sign(e.x)
    assert s.tolist() in ([1, -1, 1, -1], [-1, 1, -1, 1])


@pytest.mark.parametrize("method", METHODS)
def test_triangle_and_c5(method):
    e = smallest_eigvec(G.complete(3), 0.01, seed=1, method=method)
    assert 0.5 - 1e-12 <= e.eps_x <= 0.5 + 0.01
    e = smallest_eigvec(G.cycle(5), 0.01, seed=1, method=method)
    assert C5_MIN - 1e-12 <= e.eps_x <= C5_MIN + 0.01
    assert C5_MIN == pytest.approx(0.190983, abs=1e-6)


def test_rayleigh_examples():
    assert rayleigh_quotient(WeightedGraph(2, [0], [1]), [1, -1]) == 0
    assert rayleigh_quotient(G.complete(3), [1, -1, 0]) == pytest.approx(0.5)
    with pytest.raises(ValueError, match="zero denominator"):
        rayleigh_quotient(G.complete(3), [0, 0, 0])


graphs = st.builds(
    lambda n, p, seed, kind: G.random_graph(n, p, seed=seed, weights=kind),
    st.integers(2, 40), st.floats(0.1, 0.9), st.integers(0, 10**6),
    st.sampled_from([None, "int", "real", "signed"]),
)


@given(graphs, st.integers(0, 2**31), st.floats(-5, 5).filter(lambda c: abs(c) > 1e-3))
def test_rayleigh_matrix_form_and_scale(g, seed, c):
    x = np.random.default_rng(seed).standard_normal(g.n)
    a = g.adjacency().toarray()
    d = np.abs(a).sum(axis=1)
    q = (x @ (np.diag(d) + a) @ x) / (x @ (d * x))
    r = rayleigh_quotient(g, x)
    assert r == pytest.approx(q, rel=1e-9, abs=1e-12)
    assert rayleigh_quotient(g, c * x) == pytest.approx(r, rel=1e-9, abs=1e-12)


@given(graphs, st.integers(0, 1000), st.sampled_from([0.05, 0.2]))
def test_never_beats_optimum_and_meets_guarantee(g, seed, delta):
    lam = dense_lambda_min(g)
    for method in ("auto", "power"):
        e = smallest_eigvec(g, delta, seed=seed, method=method)
        assert e.eps_x >= 1 + lam - 1e-9
        assert e.eps_x <= 1 + lam + delta + 1e-9
        assert e.eps_x == pytest.approx(rayleigh_quotient(g, e.x), rel=1e-9, abs=1e-12)
        assert np.all(e.x[g.deg == 0] == 0) and np.any(e.x)


def test_power_guarantee_many_seeds():
    """Plain iterative power method (no squaring) vs the dense top eigenvalue."""
    from spectral_maxcut.eigen import _active_operator, _power_iterative
    g = G.random_graph(120, 0.05, seed=7, weights="real")
    active, p = _active_operator(g)
    top = float(np.linalg.eigvalsh(p.toarray())[-1])
    delta = 0.1
    k = power_iterations(len(active), delta)
    ok = 0
    for seed in range(40):
        z0 = np.random.default_rng(seed).standard_normal(len(active))
        z = _power_iterative(p, z0 / np.linalg.norm(z0), k)
        ok += float(z @ (p @ z)) / float(z @ z) >= (1 - delta) * top
    assert ok >= 38


def test_deterministic_and_isolated():
    g = WeightedGraph(6, [0, 1, 2], [1, 2, 0])
    a = smallest_eigvec(g, 0.1, seed=3)
    b = smallest_eigvec(g, 0.1, seed=3)
    np.testing.assert_array_equal(a.x, b.x)
    assert np.all(a.x[3:] == 0)


def test_errors():
    with pytest.raises(ValueError, match="no edges"):
        smallest_eigvec(WeightedGraph(3, [], []), 0.1)
    with pytest.raises(ValueError):
        smallest_eigvec(G.cycle(4), 1.5)
    with pytest.raises(ValueError):
        smallest_eigvec(G.cycle(4), 0.1, method="qr")


def test_lambda_min_methods_agree():
    g = G.random_multigraph(700, 4000, seed=2)
    lam_l, used, res = lambda_min(g, method="lanczos")
    lam_d, _, _ = lambda_min(g, method="dense")
    assert used == "lanczos" and res < 1e-6
    assert lam_l == pytest.approx(lam_d, abs=1e-8)


def test_lanczos_path_on_larger_graph():
    g = G.random_multigraph(3000, 15000, seed=4)
    e = smallest_eigvec(g, 0.01, seed=0)
    assert e.method == "lanczos"
    lam, _, _ = lambda_min(g, method="lanczos")
    assert 1 + lam - 1e-9 <= e.eps_x <= 1 + lam + 1e-6
