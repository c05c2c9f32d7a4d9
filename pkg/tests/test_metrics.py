import numpy as np
import pytest

from evaluation.metrics import ade, fde, min_over_k, step_distances
from trajectories.windows import rotation_matrix
from utils.utils_errors import ConfigError, InsufficientLength


class TestDisplacementErrors:
    def test_three_four_five(self):
        predicted = [(3.0, 4.0), (0.0, 0.0)]
        truth = [(0.0, 0.0), (0.0, 0.0)]
        assert ade(predicted, truth) == pytest.approx(2.5)
        assert fde(predicted, truth) == pytest.approx(0.0)

    def test_fde_is_last_step(self):
        assert fde([(0, 0), (6, 8)], [(0, 0), (0, 0)]) == pytest.approx(10.0)

    def test_prediction_is_truncated_to_ground_truth(self):
        predicted = np.array([(0, 0), (1, 0), (100, 100)])
        assert ade(predicted, [(0, 0), (1, 0)]) == 0.0
        assert step_distances(predicted, [(0, 0)]).shape == (1,)

    def test_short_prediction_or_empty_truth(self):
        with pytest.raises(InsufficientLength):
            ade([(0, 0)], [(0, 0), (1, 1)])
        with pytest.raises(InsufficientLength):
            fde([(0, 0)], np.zeros((0, 2)))

    def test_invariant_under_rigid_motion(self):
        rng = np.random.default_rng(3)
        predicted, truth = rng.normal(size=(12, 2)), rng.normal(size=(12, 2))
        rotation, shift = rotation_matrix(1.1), np.array([5.0, -2.0])
        moved = (predicted @ rotation.T + shift, truth @ rotation.T + shift)
        assert ade(*moved) == pytest.approx(ade(predicted, truth))
        assert fde(*moved) == pytest.approx(fde(predicted, truth))


class TestBestOfK:
    def test_minimises_each_metric_independently(self):
        truth = [(0, 0), (0, 0)]
        good_ade = [(0.1, 0), (1.0, 0)]  # ade 0.55, fde 1.0
        good_fde = [(1.0, 0), (0.2, 0)]  # ade 0.6, fde 0.2
        assert min_over_k([good_ade, good_fde], truth) == pytest.approx((0.55, 0.2))

    def test_more_samples_never_hurt(self):
        rng = np.random.default_rng(8)
        truth = rng.normal(size=(12, 2))
        samples = list(rng.normal(size=(20, 12, 2)))
        previous = (np.inf, np.inf)
        for k in range(1, 21):
            current = min_over_k(samples[:k], truth)
            assert current[0] <= previous[0] and current[1] <= previous[1]
            previous = current

    def test_no_samples(self):
        with pytest.raises(ConfigError):
            min_over_k([], [(0, 0)])
