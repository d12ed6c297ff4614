import hashlib
import math
import struct

import numpy as np
import pytest

from sciembed import encoder
from sciembed.corpus import JournalLabelMap
from conftest import make_record


# --- featurize ---


def test_featurize_empty_text_is_zero():
    v = encoder.featurize("", 32, seed=0)
    assert v.shape == (32,)
    assert not v.any()


def test_featurize_repeated_token_collinear():
    v1 = encoder.featurize("a a", 64, seed=0)
    v2 = encoder.featurize("a", 64, seed=0)
    np.testing.assert_allclose(v1, v2)  # same direction after normalization


def test_featurize_matches_documented_hash():
    # independent reimplementation of the documented scheme
    text = "Deep learning, for ARXIV abstracts!"
    feature_dim, seed = 128, 0
    expected = np.zeros(feature_dim)
    for token in ["deep", "learning", "for", "arxiv", "abstracts"]:
        digest = hashlib.blake2b(
            token.encode("utf-8"), digest_size=16, key=struct.pack("<q", seed)
        ).digest()
        bucket = int.from_bytes(digest[:8], "little") % feature_dim
        sign = 1.0 if digest[8] % 2 == 0 else -1.0
        expected[bucket] += sign
    expected /= np.linalg.norm(expected)
    np.testing.assert_array_equal(encoder.featurize(text, feature_dim, seed), expected)


def test_featurize_seed_changes_mapping():
    assert not np.array_equal(
        encoder.featurize("some words here", 64, seed=0),
        encoder.featurize("some words here", 64, seed=1),
    )


# --- forward / loss ---


def test_forward_zero_params_uniform():
    p = encoder.EncoderParams(
        np.zeros((10, 4)), np.zeros(4), np.zeros((4, 5)), np.zeros(5), seed=0
    )
    _, probs = encoder.forward(p, np.ones(10))
    np.testing.assert_allclose(probs, np.full(5, 0.2), atol=1e-15)


def test_forward_logit_identity():
    p = encoder.EncoderParams(
        np.zeros((10, 4)), np.zeros(4), np.zeros((4, 3)),
        np.array([math.log(2.0), 0.0, 0.0]), seed=0
    )
    _, probs = encoder.forward(p, np.zeros(10))
    np.testing.assert_allclose(probs, [0.5, 0.25, 0.25], atol=1e-15)


def test_forward_probs_sum_to_one():
    rng = np.random.default_rng(0)
    p = encoder.init_params(20, 8, 5, seed=1)
    for _ in range(10):
        _, probs = encoder.forward(p, rng.normal(size=20))
        assert abs(probs.sum() - 1.0) < 1e-12
        assert probs.min() >= 0.0


def test_softmax_shift_invariance():
    rng = np.random.default_rng(1)
    logits = rng.normal(size=(4, 6))
    np.testing.assert_allclose(
        encoder.softmax(logits), encoder.softmax(logits + 123.456), atol=1e-12
    )


def test_ce_loss_examples():
    assert encoder.ce_loss(np.array([0.0, 1.0, 0.0]), 1) == 0.0
    n = 7
    assert abs(encoder.ce_loss(np.full(n, 1.0 / n), 3) - math.log(n)) < 1e-12
    assert abs(encoder.ce_loss(np.array([0.7, 0.2, 0.1]), 0) - 0.35667494393873245) < 1e-12
    assert encoder.ce_loss(np.array([0.0, 1.0]), 0) > 0  # clamped, finite
    with pytest.raises(ValueError):
        encoder.ce_loss(np.array([1.0, 0.0]), 5)


# --- gradients ---


def _numeric_grads(params, x, y, step=1e-6):
    grads = {}
    for name in ("w1", "b1", "w2", "b2"):
        block = getattr(params, name)
        g = np.zeros_like(block)
        flat = block.ravel()
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + step
            up, _ = encoder.loss_and_grads(params, x, y)
            flat[i] = orig - step
            down, _ = encoder.loss_and_grads(params, x, y)
            flat[i] = orig
            g.ravel()[i] = (up - down) / (2 * step)
        grads[name] = g
    return grads


def test_gradient_check_small():
    rng = np.random.default_rng(2)
    for _ in range(10):
        params = encoder.init_params(50, 8, 5, seed=int(rng.integers(1 << 30)))
        x = rng.normal(size=(4, 50))
        y = rng.integers(0, 5, size=4)
        _, analytic = encoder.loss_and_grads(params, x, y)
        numeric = _numeric_grads(params, x, y)
        for name in analytic:
            ga, gn = analytic[name], numeric[name]
            rel = np.linalg.norm(ga - gn) / (np.linalg.norm(ga) + np.linalg.norm(gn) + 1e-12)
            assert rel < 1e-5, f"{name}: rel error {rel}"


# --- training ---


def _label_map(records):
    return JournalLabelMap.from_journals(r.journal for r in records)


def test_train_loss_decreases(small_corpus):
    labels = _label_map(small_corpus)
    cfg = encoder.TrainConfig(feature_dim=512, hidden_dim=16, epochs=1, seed=0)
    _, trace = encoder.train(small_corpus, labels, cfg)
    first_loss = trace[0]
    cfg2 = encoder.TrainConfig(feature_dim=512, hidden_dim=16, epochs=3, seed=0)
    _, trace2 = encoder.train(small_corpus, labels, cfg2)
    assert trace2[-1] < first_loss


def test_train_lr_zero_keeps_init(small_corpus):
    labels = _label_map(small_corpus)
    cfg = encoder.TrainConfig(feature_dim=256, hidden_dim=8, lr=0.0, epochs=2, seed=3)
    params, _ = encoder.train(small_corpus, labels, cfg)
    init = encoder.init_params(256, 8, len(labels), seed=3)
    np.testing.assert_array_equal(params.w1, init.w1)
    np.testing.assert_array_equal(params.w2, init.w2)
    np.testing.assert_array_equal(params.b1, init.b1)
    np.testing.assert_array_equal(params.b2, init.b2)


def test_train_deterministic(small_corpus):
    labels = _label_map(small_corpus)
    cfg = encoder.TrainConfig(feature_dim=256, hidden_dim=8, epochs=2, seed=5)
    p1, t1 = encoder.train(small_corpus, labels, cfg)
    p2, t2 = encoder.train(small_corpus, labels, cfg)
    assert t1 == t2
    np.testing.assert_array_equal(p1.w1, p2.w1)
    np.testing.assert_array_equal(p1.b2, p2.b2)


def test_train_unknown_journal_errors(small_corpus):
    labels = JournalLabelMap.from_journals(["other"])
    cfg = encoder.TrainConfig(feature_dim=64, hidden_dim=4, epochs=1, seed=0)
    with pytest.raises(ValueError, match=small_corpus[0].journal):
        encoder.train(small_corpus, labels, cfg)


# --- extract ---


def test_extract_shape_and_purity(small_corpus):
    params = encoder.init_params(256, 32, 5, seed=0)
    subset = small_corpus[:10]
    m = encoder.extract(params, subset)
    assert (len(m), m.dim) == (10, 32)
    assert np.isfinite(m.values).all()
    m2 = encoder.extract(params, subset)
    assert m.values.tobytes() == m2.values.tobytes()


def test_extract_duplicate_records_identical_rows():
    recs = [
        make_record(rid="a", title="same text", abstract="body body"),
        make_record(rid="b", title="same text", abstract="body body"),
    ]
    params = encoder.init_params(128, 16, 3, seed=1)
    m = encoder.extract(params, recs)
    np.testing.assert_array_equal(m.values[0], m.values[1])


# --- checkpoints ---


def test_checkpoint_roundtrip(tmp_path):
    params = encoder.init_params(40, 6, 9, seed=123)
    path = tmp_path / "enc.mtp"
    encoder.save_params(params, path)
    back = encoder.load_params(path)
    assert back.seed == 123
    for name in ("w1", "b1", "w2", "b2"):
        np.testing.assert_array_equal(getattr(back, name), getattr(params, name))


def test_checkpoint_corruption(tmp_path):
    params = encoder.init_params(10, 3, 2, seed=0)
    path = tmp_path / "enc.mtp"
    encoder.save_params(params, path)
    raw = path.read_bytes()
    path.write_bytes(raw[:-4])
    with pytest.raises(ValueError, match="size mismatch"):
        encoder.load_params(path)
    path.write_bytes(b"XXXX" + raw[4:])
    with pytest.raises(ValueError, match="not an encoder checkpoint"):
        encoder.load_params(path)
