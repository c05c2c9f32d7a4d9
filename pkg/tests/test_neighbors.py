import numpy as np
import pytest

from tests.conftest import scene_of, straight_records
from trajectories.neighbors import extract_neighbors, neighbor_feature_length
from trajectories.windows import slice_windows
from utils.utils_errors import ConfigError

VELOCITY = (0.4, 0.0)


def target_window(scene):
    """The first window of pedestrian 1."""
    return next(w for w in slice_windows(scene) if w.pedestrian_id == 1)


class TestNeighborContext:
    def test_lone_pedestrian_has_empty_context(self, line_window):
        context = extract_neighbors(line_window)
        assert not context.present.any()
        assert context.positions.shape == (12, 8, 2)
        assert not context.positions.any()

    def test_companion_at_fixed_offset(self):
        records = straight_records(1, 0, 20, (0, 0), VELOCITY) + straight_records(2, 0, 20, (2, 0), VELOCITY)
        window = target_window(scene_of("pair", records))
        history = extract_neighbors(window, variant="History")
        assert history.present.sum() == 1
        assert history.distances[0] == pytest.approx(2.0)
        np.testing.assert_allclose(history.positions[0, -1], [2.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(history.positions[0, 0], [2.0 - 7 * 0.4, 0.0], atol=1e-12)

        future = extract_neighbors(window, variant="Future")
        assert future.positions.shape == (12, 12, 2)
        np.testing.assert_allclose(future.positions[0, 0], [2.4, 0.0], atol=1e-12)
        np.testing.assert_allclose(future.positions[0, -1], [2.0 + 12 * 0.4, 0.0], atol=1e-12)

    def test_slots_are_ordered_by_distance(self):
        records = straight_records(1, 0, 20, (0, 0), VELOCITY)
        for pedestrian_id, offset in ((5, 3.0), (6, 1.0), (7, 2.0)):
            records += straight_records(pedestrian_id, 0, 20, (0, offset), VELOCITY)
        context = extract_neighbors(target_window(scene_of("three", records)))
        np.testing.assert_allclose(context.distances[:3], [1.0, 2.0, 3.0])
        np.testing.assert_allclose(context.positions[:3, -1, 1], [1.0, 2.0, 3.0])
        assert context.present.tolist() == [True] * 3 + [False] * 9

    def test_partial_neighbors_are_skipped(self):
        records = straight_records(1, 0, 20, (0, 0), VELOCITY)
        records += straight_records(2, 40, 10, (0, 1), VELOCITY)  # enters at t-3
        window = target_window(scene_of("late", records))
        assert not extract_neighbors(window, variant="History").present.any()

    def test_context_turns_with_a_rotated_window(self):
        records = straight_records(1, 0, 20, (0, 0), VELOCITY) + straight_records(2, 0, 20, (2, 0), VELOCITY)
        window = target_window(scene_of("pair", records)).rotated(np.pi / 2)
        context = extract_neighbors(window)
        np.testing.assert_allclose(context.positions[0, -1], [0.0, 2.0], atol=1e-12)

    def test_at_most_twelve_slots(self):
        records = straight_records(1, 0, 20, (0, 0), VELOCITY)
        for pedestrian_id in range(2, 20):
            records += straight_records(pedestrian_id, 0, 20, (0, pedestrian_id), VELOCITY)
        context = extract_neighbors(target_window(scene_of("crowd", records)))
        assert context.present.all()
        assert context.distances[-1] == pytest.approx(13.0)

    def test_unknown_variant(self, line_window):
        with pytest.raises(ConfigError):
            extract_neighbors(line_window, variant="Everything")

    @pytest.mark.parametrize("variant, length", [("Basic", 0), ("History", 192), ("Future", 288)])
    def test_feature_lengths(self, variant, length):
        assert neighbor_feature_length(variant) == length
