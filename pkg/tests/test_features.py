import numpy as np
import pytest

from neural.features import FeatureSpec, build_features, build_targets, window_features
from tests.conftest import scene_of, straight_records
from trajectories.windows import slice_windows
from utils.utils_errors import ConfigError, InsufficientLength


class TestFeatureSpec:
    @pytest.mark.parametrize(
        "representation, variant, width",
        [
            ("relative", "Basic", 14),
            ("absolute", "Basic", 16),
            ("relative", "History", 206),
            ("relative", "Future", 302),
        ],
    )
    def test_input_widths(self, representation, variant, width):
        assert FeatureSpec(representation, neighbor_variant=variant).input_dim == width

    def test_history_length_limits(self):
        assert FeatureSpec("relative", 1).input_dim == 2
        with pytest.raises(ConfigError):
            FeatureSpec("relative", 8)
        with pytest.raises(ConfigError):
            FeatureSpec("polar")


class TestBuilders:
    def test_relative_features_are_last_displacements(self, line_window):
        features = window_features(line_window, FeatureSpec("relative", 3))
        np.testing.assert_allclose(features, [0.5, 0.25] * 3)

    def test_absolute_features_are_positions(self, line_window):
        features = window_features(line_window, FeatureSpec("absolute"))
        np.testing.assert_allclose(features, line_window.observed.positions.reshape(-1))

    def test_neighbor_features_follow_history(self):
        records = straight_records(1, 0, 20, (0, 0), (0.4, 0)) + straight_records(2, 0, 20, (0, 1), (0.4, 0))
        windows = slice_windows(scene_of("pair", records))
        matrix = build_features(windows, FeatureSpec("relative", neighbor_variant="History"))
        assert matrix.shape == (2, 206)
        first_slot_at_t = matrix[0, 14 + 7 * 2 : 14 + 8 * 2]
        np.testing.assert_allclose(first_slot_at_t, [0.0, 1.0], atol=1e-12)

    def test_targets_are_future_displacements(self, line_window):
        targets = build_targets([line_window])
        assert targets.shape == (1, 24)
        np.testing.assert_allclose(targets[0], [0.5, 0.25] * 12)

    def test_short_windows_have_no_training_target(self):
        windows = slice_windows(scene_of("s", straight_records(1, 0, 12, (0, 0), (1, 0))))
        with pytest.raises(InsufficientLength):
            build_targets(windows)

    def test_empty_inputs(self):
        assert build_features([], FeatureSpec()).shape == (0, 14)
        assert build_targets([]).shape == (0, 24)
