"""Multi-subsampling, POV embedding, and the multi-forest vote."""

import numpy as np
import pytest

from hawk.errors import DegenerateClass, UntrainedModel
from hawk.features.streams import STREAM_COLUMNS
from hawk.revpov import EMBED_ORDER, RevPovConfig, RevPovModel, majority_vote, multi_subsample


class TestMultiSubsample:
    def test_nine_balanced_disjoint_sets(self):
        labels = np.asarray([0] * 900 + [1] * 100)
        sets = multi_subsample(labels, seed=1)
        assert len(sets) == 9
        honest_seen = set()
        for idx in sets:
            assert len(idx) == 200
            assert (labels[idx] == 1).sum() == 100
            assert (labels[idx] == 0).sum() == 100
            honest = {int(i) for i in idx if labels[i] == 0}
            assert not honest & honest_seen  # unique across iterations
            honest_seen |= honest

    def test_balanced_even_when_not_divisible(self):
        labels = np.asarray([0] * 950 + [1] * 100)
        sets = multi_subsample(labels, seed=2)
        assert len(sets) == 10  # round(9.5) half-up
        for idx in sets:
            assert abs((labels[idx] == 0).sum() - (labels[idx] == 1).sum()) <= 1
            honest = [int(i) for i in idx if labels[i] == 0]
            assert len(set(honest)) == len(honest)  # unique within a set

    def test_equal_classes_single_whole_set(self):
        labels = np.asarray([0] * 50 + [1] * 50)
        sets = multi_subsample(labels, seed=3)
        assert len(sets) == 1
        assert sorted(int(i) for i in sets[0]) == list(range(100))

    def test_deterministic(self):
        labels = np.asarray([0] * 90 + [1] * 10)
        a = multi_subsample(labels, seed=4)
        b = multi_subsample(labels, seed=4)
        for sa, sb in zip(a, b):
            np.testing.assert_array_equal(sa, sb)

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateClass):
            multi_subsample(np.zeros(10, dtype=int), seed=0)

    def test_k_clamped(self):
        labels = np.asarray([0] * 1000 + [1] * 10)
        sets = multi_subsample(labels, seed=5)
        assert len(sets) == 15


class TestMajorityVote:
    def test_simple_cases(self):
        assert majority_vote([1, 1, 1, 1, 1, 0, 0, 0, 0]) == 1
        assert majority_vote([0] * 9) == 0

    def test_exhaustive_oracle_small(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            votes = rng.integers(0, 2, size=9)
            brute = int(np.sum(votes == 1) > np.sum(votes == 0))
            assert majority_vote(votes) == brute


class TestRevPovModel:
    def _empty_streams(self):
        return {name: np.zeros((0, len(STREAM_COLUMNS[name]))) for name in EMBED_ORDER}

    def test_embed_untrained_raises(self):
        model = RevPovModel(RevPovConfig())
        with pytest.raises(UntrainedModel):
            model.embed(self._empty_streams())

    def test_trained_model_shapes(self, trained_bundle):
        bundle, samples = trained_bundle
        model = bundle.revpov
        sample = samples["validation"][0]
        v_pov, flags = model.embed(sample.streams)
        assert v_pov.shape == (7 * model.config.out_dim,)
        assert flags.shape == (7,)

    def test_empty_streams_zero_embedding_all_flags(self, trained_bundle):
        bundle, _ = trained_bundle
        v_pov, flags = bundle.revpov.embed(self._empty_streams())
        assert (v_pov == 0).all()
        assert (flags == 1).all()

    def test_embedding_deterministic(self, trained_bundle):
        bundle, samples = trained_bundle
        sample = samples["validation"][1]
        a, _ = bundle.revpov.embed(sample.streams)
        b, _ = bundle.revpov.embed(sample.streams)
        np.testing.assert_array_equal(a, b)

    def test_decide_score_is_vote_fraction(self, trained_bundle):
        bundle, samples = trained_bundle
        model = bundle.revpov
        x = model.forest_input(samples["validation"][0].streams)
        votes = [f.decide(x)[0] for f in model.forests]
        decision, score = model.decide(x)
        assert score == np.mean(votes)
        assert decision == majority_vote(votes)

    def test_validation_recall_on_blatant_set(self, trained_bundle):
        bundle, samples = trained_bundle
        ev = bundle.evaluate(samples["validation"])
        assert ev["revpov"]["recall"] >= 0.8
