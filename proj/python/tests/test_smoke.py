import numpy as np
import pytest

import dsim


def test_generators_are_deterministic():
    xa, ya = dsim.generate_blobs(seed=7, n_per_class=50, c=2, d=2, separation=10.0, sigma=1.0)
    xb, yb = dsim.generate_blobs(seed=7, n_per_class=50, c=2, d=2, separation=10.0, sigma=1.0)
    assert xa.shape == (100, 2)
    assert np.array_equal(xa, xb)
    assert ya == yb
    assert sum(1 for v in ya if v == 1) == 50


def test_gram_and_similarity_shapes():
    x, _ = dsim.generate_two_moons(seed=3, n=40, noise=0.05)
    h = dsim.bandwidth_heuristic(x)
    k = dsim.gram(x, h)
    assert k.shape == (40, 40)
    assert np.allclose(k, k.T)
    assert np.allclose(np.diag(k), 1.0)
    assert np.allclose(dsim.gram_sqrt2(x, h), np.sqrt(k))

    alpha = np.full(40, 1.0 / 40)
    s = dsim.discriminative_similarity(alpha, k, h, 0.1)
    assert s.min() >= 0.0
    assert np.allclose(s, s.T)


def test_decompose_similarity_certificates():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(12, 12))
    s = 0.5 * (a + a.T)
    plus, minus = dsim.decompose_similarity(s)
    assert np.abs(s - (plus - minus)).max() <= 1e-8
    assert np.linalg.eigvalsh(plus).min() >= -1e-8
    assert np.linalg.eigvalsh(minus).min() >= -1e-8


def test_solvers_roundtrip():
    proj = dsim.project_simplex(np.array([0.2, 0.3]))
    assert proj == pytest.approx([0.45, 0.55])

    q = np.diag([1.0, 100.0])
    sol = dsim.solve_simplex_qp(q, np.zeros(2))
    assert sol["converged"]
    assert sol["alpha"][0] == pytest.approx(100.0 / 101.0, abs=1e-4)

    vals, vecs = dsim.eigen_symmetric(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert vals == pytest.approx([-1.0, 1.0])
    assert np.allclose(vecs @ vecs.T, np.eye(2), atol=1e-10)


def test_cdsk_separates_blobs():
    x, y = dsim.generate_blobs(seed=7, n_per_class=50, c=2, d=2, separation=10.0, sigma=1.0)
    result = dsim.cdsk(x, c=2, lambda_=1.0)
    assert dsim.accuracy(result["labels"], y) == 1.0
    trace = result["objective_trace"]
    assert all(b <= a + 1e-8 * max(1.0, abs(a)) for a, b in zip(trace, trace[1:]))


def test_lpdsk_propagates_blob_labels():
    x, y = dsim.generate_blobs(seed=7, n_per_class=50, c=2, d=2, separation=10.0, sigma=1.0)
    order = [0, 1, 50, 51] + [i for i in range(100) if i not in (0, 1, 50, 51)]
    result = dsim.lpdsk(x[order], [1, 1, 2, 2], c=2, lambda_=1.0, bandwidth_mode="variance")
    truth = [y[i] for i in order[4:]]
    agreement = np.mean([a == b for a, b in zip(result["labels"], truth)])
    assert agreement >= 0.95
    soft = result["soft_labels"]
    assert soft.min() >= -1e-8 and soft.max() <= 1 + 1e-8
    assert np.allclose(soft.sum(axis=1), 1.0, atol=1e-8)


def test_harmonic_three_node_path():
    s = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    yu = dsim.harmonic_propagate(s, [1, 2], c=2)
    assert yu.shape == (1, 2)
    assert yu[0] == pytest.approx([0.5, 0.5], abs=1e-12)


def test_diagnostics_keys_and_bounds():
    x, y = dsim.generate_blobs(seed=5, n_per_class=10, c=2, d=2, separation=6.0, sigma=1.0)
    alpha = np.full(20, 1.0 / 20)
    report = dsim.classifier_diagnostics(x, y, 2, alpha, bandwidth=2.0)
    assert report["error_bound"] >= report["empirical_error_phi"]
    assert report["empirical_error_similarity"] >= report["empirical_error_phi"] - 1e-12
    assert "ise_bound" in report


def test_metrics():
    assert dsim.accuracy([1, 1, 2, 2], [2, 2, 1, 1]) == 1.0
    assert dsim.nmi([1, 1, 2, 2], [1, 2, 1, 2]) == 0.0
    assert dsim.nmi([1, 2, 3], [1, 2, 3]) == 1.0


def test_invalid_inputs_raise():
    with pytest.raises(Exception):
        dsim.discriminative_similarity(np.array([0.5, 0.6]), np.eye(2), 1.0, 0.1)  # not simplex
    with pytest.raises(Exception):
        dsim.bandwidth_heuristic(np.zeros((4, 2)))  # identical points
