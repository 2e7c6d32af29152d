import math

import pytest

import itboost


def test_lz76_examples():
    assert itboost.lz76_complexity([]) == 0
    assert itboost.lz76_complexity([0] * 10) == 2
    assert itboost.lz76_complexity([0, 1] * 5) == 3


def test_incremental_matches_batch():
    inc = itboost.IncrementalLz76()
    seq = [0, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 1]
    for i, s in enumerate(seq):
        inc.append(s)
        assert inc.complexity() == itboost.lz76_complexity(seq[: i + 1])
    assert len(inc) == len(seq)


def test_trust_weights():
    assert itboost.normalize_complexities([2, 4, 6]) == [0.0, 0.5, 1.0]
    trust, weights = itboost.trust_weights([0.5, -0.8], [1.0, 0.5])
    assert trust[0] == pytest.approx(math.exp(-1.0), abs=1e-12)
    assert weights[1] == pytest.approx(0.8 * math.exp(-0.5), abs=1e-12)


def test_train_and_predict():
    data = itboost.make_two_gaussians(n=120, d=4, sep=6.0, seed=1)
    model = itboost.train(data, iterations=20, loss="squared")
    assert model.n_trees == 20
    proba = model.predict_proba(data)
    assert len(proba) == len(data)
    acc = sum((p >= 0.5) == (y > 0) for p, y in zip(proba, data.labels)) / len(data)
    assert acc > 0.9
    # Same inputs, same model.
    again = itboost.train(data, iterations=20, loss="squared")
    assert again.to_text() == model.to_text()


def test_cross_validate_report():
    data = itboost.make_two_gaussians(n=100, d=3, sep=5.0, seed=2)
    report = itboost.cross_validate(data, k=5, iterations=10, noise_rate=0.2)
    assert 0.0 <= report["acc"][0] <= 1.0
    assert report["trust_seconds"] >= 0.0


def test_stats_and_theory():
    chi2, p = itboost.friedman_from_mean_ranks([6.6, 5.8, 5.4, 3.7, 3.4, 7.1, 3.0, 1.0], 5)
    assert abs(chi2 - 25.0) <= 0.1
    assert abs(p - 0.0007) <= 2e-4
    assert itboost.required_sample_size(0.1, 0.05) == 185


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        itboost.Dataset([[1.0], [2.0]], [1, 1, 1])
    with pytest.raises(ValueError):
        itboost.train(itboost.make_two_gaussians(n=20, d=2), loss="hinge")
    with pytest.raises(ValueError):
        itboost.load_csv("/nonexistent/file.csv")
