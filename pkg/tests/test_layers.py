"""Gradient checks and algebraic properties of the layer primitives."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from hawk.errors import EmptySequence
from hawk.learn import (
    Dense,
    ELU,
    EncoderConfig,
    LSTMLayer,
    LuongAttention,
    SequenceEncoder,
    Sigmoid,
    grad_check,
    weighted_bce,
)


def rng(seed=0):
    return np.random.Generator(np.random.PCG64(seed))


class TestGradients:
    def test_dense_sigmoid_bce_tight(self):
        r = rng(1)
        layer = Dense(r, 6, 1)
        sig = Sigmoid()
        x = r.normal(size=6)
        y = np.asarray([1.0])

        def loss_fn():
            p = sig.forward(layer.forward(x))
            loss, dp = weighted_bce(p, y, pos_weight=9.0)
            layer.backward(sig.backward(dp))
            return loss

        assert grad_check(loss_fn, layer.parameters()) < 1e-6

    def test_elu_chain(self):
        r = rng(2)
        d1, act, d2 = Dense(r, 5, 7), ELU(), Dense(r, 7, 1)
        sig = Sigmoid()
        x = r.normal(size=5)
        y = np.asarray([0.0])

        def loss_fn():
            p = sig.forward(d2.forward(act.forward(d1.forward(x))))
            loss, dp = weighted_bce(p, y)
            d1.backward(act.backward(d2.backward(sig.backward(dp))))
            return loss

        assert grad_check(loss_fn, d1.parameters() + d2.parameters()) < 1e-5

    def test_lstm_cell_three_steps(self):
        r = rng(3)
        lstm = LSTMLayer(r, 4, 5)
        x = r.normal(size=(3, 4))
        tgt = r.normal(size=(3, 5))

        def loss_fn():
            h = lstm.forward(x)
            lstm.backward(h - tgt)
            return float(0.5 * np.sum((h - tgt) ** 2))

        assert grad_check(loss_fn, lstm.parameters()) < 1e-4

    def test_attention_gradients(self):
        r = rng(4)
        att = LuongAttention(r, 5)
        h = r.normal(size=(6, 5))
        tgt = r.normal(size=(6, 5))

        def loss_fn():
            a = att.forward(h)
            att.backward(a - tgt)
            return float(0.5 * np.sum((a - tgt) ** 2))

        assert grad_check(loss_fn, att.parameters()) < 1e-4

    def test_full_encoder_composite(self):
        r = rng(5)
        enc = SequenceEncoder(
            EncoderConfig(input_dim=4, hidden=5, layers=2, dropout=0.0, dense_dim=6, out_dim=3),
            seed=11,
        )
        seq = r.normal(size=(6, 4))
        y = np.asarray([1.0])

        def loss_fn():
            _, pooled = enc.forward(seq)
            p = enc.head_score(pooled)
            loss, dp = weighted_bce(np.asarray([p]), y, pos_weight=9.0)
            enc.backward_from_pooled(enc.head_backward(float(dp[0])))
            return loss

        assert grad_check(loss_fn, enc.parameters(), denom_floor=1e-5) < 1e-4

    def test_empty_parameter_list_is_zero(self):
        assert grad_check(lambda: 0.0, []) == 0.0


class TestAttentionProperties:
    @settings(max_examples=25, deadline=None)
    @given(
        data=hnp.arrays(
            np.float64,
            st.tuples(st.integers(2, 8), st.just(4)),
            elements=st.floats(-3, 3, allow_nan=False),
        )
    )
    def test_rows_sum_to_one(self, data):
        att = LuongAttention(rng(6), 4)
        weights = att.attention_weights(data)
        np.testing.assert_allclose(weights.sum(axis=1), 1.0, atol=1e-6)

    def test_identical_hidden_states_give_uniform_weights(self):
        att = LuongAttention(rng(7), 4)
        h = np.tile(np.asarray([0.3, -0.2, 0.9, 0.1]), (5, 1))
        weights = att.attention_weights(h)
        np.testing.assert_allclose(weights, 1.0 / 5.0, atol=1e-12)


class TestEncoderSurface:
    def _encoder(self):
        return SequenceEncoder(
            EncoderConfig(input_dim=3, hidden=4, layers=2, dropout=0.0, dense_dim=5, out_dim=2),
            seed=1,
        )

    def test_empty_sequence_raises(self):
        with pytest.raises(EmptySequence):
            self._encoder().forward(np.zeros((0, 3)))

    def test_single_step_pooled_equals_step(self):
        enc = self._encoder()
        steps, pooled = enc.forward(np.asarray([[0.1, -0.2, 0.5]]))
        np.testing.assert_allclose(pooled, steps[0])

    def test_pooled_is_mean_of_steps(self):
        enc = self._encoder()
        seq = rng(8).normal(size=(7, 3))
        steps, pooled = enc.forward(seq)
        np.testing.assert_allclose(pooled, steps.mean(axis=0))

    def test_deterministic(self):
        enc = self._encoder()
        seq = rng(9).normal(size=(5, 3))
        a = enc.forward(seq)[1]
        b = enc.forward(seq)[1]
        np.testing.assert_array_equal(a, b)

    def test_decimation_keeps_whole_sequence_coverage(self):
        enc = SequenceEncoder(
            EncoderConfig(input_dim=1, hidden=3, layers=1, dropout=0.0, dense_dim=3,
                          out_dim=2, max_len=4, truncation="decimate"),
            seed=2,
        )
        seq = np.arange(10, dtype=np.float64).reshape(-1, 1)
        prepared = enc.prepare(seq)
        assert prepared.shape[0] <= 4
        assert prepared[-1, 0] >= 8.0  # still reaches the tail


class TestBackendEquivalence:
    def test_compiled_and_numpy_kernels_agree(self):
        from hawk.learn.backend import BACKEND, lstm_backward, lstm_forward, numpy_kernels

        r = rng(12)
        T, D, H = 9, 5, 6
        x = r.normal(size=(T, D))
        wx = r.normal(size=(D, 4 * H)) * 0.4
        wh = r.normal(size=(H, 4 * H)) * 0.3
        b = r.normal(size=4 * H)
        dh = r.normal(size=(T, H))

        h_a, c_a, g_a = (np.asarray(v) for v in lstm_forward(x, wx, wh, b))
        fallback = numpy_kernels()
        h_b, c_b, g_b = fallback.lstm_forward(x, wx, wh, b)
        np.testing.assert_allclose(h_a, h_b, rtol=1e-12, atol=1e-14)
        np.testing.assert_allclose(c_a, c_b, rtol=1e-12, atol=1e-14)

        grads_a = lstm_backward(x, wx, wh, h_a, c_a, g_a, dh)
        grads_b = fallback.lstm_backward(x, wx, wh, h_b, c_b, g_b, dh)
        for ga, gb in zip(grads_a, grads_b):
            np.testing.assert_allclose(np.asarray(ga), np.asarray(gb), rtol=1e-10, atol=1e-12)
        assert BACKEND in ("cython", "numpy")


class TestBCE:
    def test_non_negative_and_limit(self):
        for p in (0.001, 0.3, 0.999):
            loss, _ = weighted_bce(np.asarray([p]), np.asarray([1.0]))
            assert loss >= 0.0
        loss, _ = weighted_bce(np.asarray([1.0 - 1e-12]), np.asarray([1.0]))
        assert loss == pytest.approx(0.0, abs=1e-9)

    def test_positive_class_weighted_nine_times(self):
        p = np.asarray([0.3])
        loss_pos, _ = weighted_bce(p, np.asarray([1.0]), pos_weight=9.0)
        loss_pos1, _ = weighted_bce(p, np.asarray([1.0]), pos_weight=1.0)
        assert loss_pos == pytest.approx(9.0 * loss_pos1)
        loss_neg9, _ = weighted_bce(p, np.asarray([0.0]), pos_weight=9.0)
        loss_neg1, _ = weighted_bce(p, np.asarray([0.0]), pos_weight=1.0)
        assert loss_neg9 == pytest.approx(loss_neg1)
