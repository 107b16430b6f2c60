import numpy as np
import pytest

import snelfs

TINY_CONFIG = {
    "dim": 4,
    "hidden": [4],
    "lr": 0.001,
    "l1": 0.01,
    "l2": 0.01,
    "schedule": {
        "lambda_s": {"min": 0.01, "max": 0.2, "steps": 2, "cycles": 1},
        "lambda_a": {"min": 0.01, "max": 0.2, "steps": 2, "cycles": 1},
        "epochs_per_stage": 1,
    },
}


def test_generate_xor_shapes():
    g = snelfs.generate("xor", seed=3, n=50, m=8)
    assert g["x"].shape == (50, 8)
    assert g["y"].shape == (50,)
    assert g["task"] == "binary"
    assert len(g["true_features"]) == 2
    assert set(np.unique(g["x"])) <= {0.0, 1.0}
    assert set(np.unique(g["y"])) <= {0.0, 1.0}


def test_generate_is_deterministic():
    a = snelfs.generate("madelon", seed=7, n=40, m=10, n_informative=3)
    b = snelfs.generate("madelon", seed=7, n=40, m=10, n_informative=3)
    np.testing.assert_array_equal(a["x"], b["x"])
    np.testing.assert_array_equal(a["y"], b["y"])
    assert a["true_features"] == b["true_features"]


def test_select_returns_full_ranking():
    g = snelfs.generate("madelon", seed=5, n=80, m=10, n_informative=2, clusters_per_class=2)
    report = snelfs.select(g["x"], g["y"], task="binary", config=TINY_CONFIG, seed=1)
    assert sorted(report["ranking_sum"]) == list(range(10))
    assert sorted(report["ranking_max"]) == list(range(10))
    assert report["sum_weight"].shape == (10,)
    assert report["epochs_executed"] == 16
    assert 0.0 <= report["val_metric"] <= 1.0
    assert report["metric"] == "accuracy"


def test_select_is_deterministic():
    g = snelfs.generate("xor", seed=2, n=60, m=6)
    a = snelfs.select(g["x"], g["y"], task="binary", config=TINY_CONFIG, seed=4)
    b = snelfs.select(g["x"], g["y"], task="binary", config=TINY_CONFIG, seed=4)
    assert a["ranking_sum"] == b["ranking_sum"]
    np.testing.assert_array_equal(a["sum_weight"], b["sum_weight"])
    assert a["val_metric"] == b["val_metric"]


def test_regression_path():
    g = snelfs.generate("linreg", seed=9, n=60, m=6, n_informative=2)
    report = snelfs.select(g["x"], g["y"], task="regression", config=TINY_CONFIG, seed=1)
    assert report["metric"] == "neg_mse"
    assert report["val_metric"] <= 0.0


def test_index_of_success_values():
    assert snelfs.index_of_success([0, 1], [0, 1], 10) == 1.0
    assert snelfs.index_of_success([], [0, 1], 10) == 0.0
    # 1 of 2 relevant plus 1 of 8 irrelevant: 0.5 - min(.5, 2/8) * 1/8
    assert snelfs.index_of_success([0, 5], [0, 1], 10) == pytest.approx(0.5 - 0.25 / 8)
    assert snelfs.success_from_ranking([1, 0, 2, 3], 2, [0, 1], 4) == 1.0


def test_fisher_score_separates():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(100, 5))
    y = (rng.random(100) < 0.5).astype(float)
    x[:, 2] += 5.0 * y
    scores = snelfs.fisher_score(x, y)
    assert scores.shape == (5,)
    assert int(np.argmax(scores)) == 2


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        snelfs.generate("blob")
    with pytest.raises(ValueError):
        snelfs.index_of_success([0], [], 5)
    with pytest.raises(ValueError):
        snelfs.select(np.zeros((4, 3)), np.zeros(5), task="binary", config=TINY_CONFIG)
