import numpy as np
import pytest

from sciembed.probe import ProbeConfig, ProbeResult, stratified_folds, train_probe


def two_gaussians(n=200, seed=0):
    rng = np.random.default_rng(seed)
    half = n // 2
    x = np.vstack([
        rng.normal(loc=(-3.0, -3.0), scale=0.5, size=(half, 2)),
        rng.normal(loc=(3.0, 3.0), scale=0.5, size=(n - half, 2)),
    ])
    y = np.array([0] * half + [1] * (n - half))
    return x, y


def nearest_centroid_accuracy(x, y):
    centroids = np.stack([x[y == c].mean(axis=0) for c in np.unique(y)])
    d2 = ((x[:, None, :] - centroids[None]) ** 2).sum(-1)
    return (d2.argmin(axis=1) == y).mean()


def test_stratified_folds_balanced_classes():
    labels = [0, 0, 0, 0, 1, 1, 1, 1]
    folds = stratified_folds(labels, 4, seed=0)
    for train_idx, val_idx in folds:
        assert len(val_idx) == 2
        assert sorted(labels[i] for i in val_idx) == [0, 1]
        assert set(train_idx) | set(val_idx) == set(range(8))
        assert not set(train_idx) & set(val_idx)


def test_stratified_folds_deterministic():
    labels = np.random.default_rng(1).integers(0, 3, size=30).tolist()
    a = stratified_folds(labels, 4, seed=9)
    b = stratified_folds(labels, 4, seed=9)
    for (ta, va), (tb, vb) in zip(a, b):
        np.testing.assert_array_equal(ta, tb)
        np.testing.assert_array_equal(va, vb)


def test_stratified_folds_disjoint_covering_random():
    rng = np.random.default_rng(2)
    for _ in range(10):
        n = int(rng.integers(8, 40))
        labels = rng.integers(0, 5, size=n).tolist()
        folds = stratified_folds(labels, 4, seed=int(rng.integers(1000)))
        vals = [set(v.tolist()) for _, v in folds]
        assert set().union(*vals) == set(range(n))
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                assert not vals[i] & vals[j]


def test_probe_separable_gaussians():
    x, y = two_gaussians()
    assert nearest_centroid_accuracy(x, y) >= 0.98  # separability oracle
    result = train_probe(x, y, ProbeConfig(runs=1, seed=0))
    assert result.mean_acc >= 0.98


def test_probe_constant_labels_error():
    x, _ = two_gaussians(40)
    with pytest.raises(ValueError, match="fewer than 2 classes"):
        train_probe(x, [1] * 40, ProbeConfig(runs=1))


def test_probe_too_few_rows_error():
    with pytest.raises(ValueError, match="4-fold"):
        train_probe(np.eye(3), [0, 1, 1], ProbeConfig(runs=1))


def test_probe_deterministic():
    x, y = two_gaussians(80, seed=3)
    a = train_probe(x, y, ProbeConfig(runs=2, seed=5))
    b = train_probe(x, y, ProbeConfig(runs=2, seed=5))
    assert a == b


def test_probe_scale_invariance():
    x, y = two_gaussians(120, seed=4)
    base = train_probe(x, y, ProbeConfig(runs=1, seed=1))
    for c in (1e-3, 7.0, 1e4):
        scaled = train_probe(x * c, y, ProbeConfig(runs=1, seed=1))
        assert abs(scaled.mean_acc - base.mean_acc) < 0.02


def test_probe_no_signal_control():
    rng = np.random.default_rng(6)
    n, n_classes = 400, 4
    x = rng.normal(size=(n, 16))
    y = rng.integers(0, n_classes, size=n)
    result = train_probe(x, y, ProbeConfig(runs=1, seed=2))
    p = 1.0 / n_classes
    sigma = np.sqrt(p * (1 - p) / n)
    assert abs(result.mean_acc - p) <= 3 * sigma


def test_early_stopping_dominance():
    x, y = two_gaussians(100, seed=7)
    result = train_probe(x, y, ProbeConfig(runs=1, seed=0))
    for fold in result.per_fold:
        assert max(fold.val_curve) >= fold.val_curve[-1]
        assert fold.val_curve[fold.best_epoch - 1] == max(fold.val_curve)


def test_means_consistent_with_folds():
    x, y = two_gaussians(100, seed=8)
    result = train_probe(x, y, ProbeConfig(runs=2, seed=3))
    accs = [f.accuracy for f in result.per_fold]
    f1s = [f.macro_f1 for f in result.per_fold]
    assert abs(result.mean_acc - np.mean(accs)) < 1e-12
    assert abs(result.std_acc - np.std(accs)) < 1e-12
    assert abs(result.mean_f1 - np.mean(f1s)) < 1e-12
    assert abs(result.std_f1 - np.std(f1s)) < 1e-12
    assert len(result.per_fold) == 2 * 4


def test_fixed_splits_override():
    x, y = two_gaussians(40, seed=9)
    idx = np.arange(40)
    splits = [(idx[:30], idx[30:]), (idx[10:], idx[:10])]
    result = train_probe(x, y, ProbeConfig(runs=1, folds=2, seed=0), fixed_splits=splits)
    assert len(result.per_fold) == 2


def test_probe_result_json_roundtrip():
    x, y = two_gaussians(60, seed=10)
    result = train_probe(x, y, ProbeConfig(runs=1, seed=0))
    back = ProbeResult.from_json_dict(result.to_json_dict())
    assert back == result


def test_probe_config_defaults_match_protocol():
    cfg = ProbeConfig()
    assert cfg.lr == 5e-4
    assert cfg.batch == 100
    assert cfg.epochs == 5
    assert cfg.folds == 4
    assert cfg.regularization == 0.0
