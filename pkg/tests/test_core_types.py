import numpy as np
import pytest

from trajectories.core_types import (
    AttributionDistribution,
    DisplacementSequence,
    FutureTrajectory,
    MotionHistory,
    NeighborContext,
    displacements_to_positions,
    positions_to_displacements,
)
from utils.utils_errors import InsufficientLength, ValidationError


class TestConversions:
    def test_displacements_are_successive_differences(self):
        seq = positions_to_displacements([(0, 0), (1, 0), (1, 2)])
        np.testing.assert_array_equal(seq.displacements, [[1, 0], [0, 2]])
        assert seq[1].dy == 2

    def test_single_position_is_rejected(self):
        with pytest.raises(InsufficientLength):
            positions_to_displacements([(3.0, 4.0)])

    def test_round_trip_on_random_tracks(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            track = rng.normal(0, 5, size=(rng.integers(2, 21), 2))
            seq = positions_to_displacements(track)
            rebuilt = displacements_to_positions(track[0], seq)
            np.testing.assert_allclose(rebuilt, track[1:], atol=1e-9)

    def test_displacements_are_translation_invariant(self):
        track = np.array([[0.0, 0.0], [0.4, 0.1], [0.9, 0.3]])
        shifted = positions_to_displacements(track + [100.0, -50.0])
        np.testing.assert_allclose(shifted.displacements, positions_to_displacements(track).displacements)

    def test_empty_sequence_yields_no_positions(self):
        assert displacements_to_positions((1, 1), np.zeros((0, 2))).shape == (0, 2)

    def test_results_are_read_only(self):
        positions = displacements_to_positions((0, 0), [[1, 1]])
        with pytest.raises(ValueError):
            positions[0, 0] = 5.0


class TestValueTypes:
    @pytest.mark.parametrize("count", [0, 9])
    def test_history_length_bounds(self, count):
        with pytest.raises(InsufficientLength):
            MotionHistory(np.zeros((count, 2)))

    def test_history_current_is_last_position(self):
        history = MotionHistory([(0, 0), (1, 2)])
        assert history.current == (1.0, 2.0)

    def test_future_needs_two_positions(self):
        with pytest.raises(InsufficientLength):
            FutureTrajectory([(0, 0)])

    def test_non_finite_coordinates_are_rejected(self):
        with pytest.raises(ValidationError):
            DisplacementSequence([(0.0, np.nan)])

    def test_neighbor_slots_must_be_packed(self):
        present = np.zeros(12, dtype=bool)
        present[3] = True
        with pytest.raises(ValidationError):
            NeighborContext(np.zeros((12, 8, 2)), present, np.zeros(12))

    def test_attribution_must_sum_to_one(self):
        with pytest.raises(ValidationError):
            AttributionDistribution([0.5, 0.4])
        with pytest.raises(ValidationError):
            AttributionDistribution([1.5, -0.5])
        assert len(AttributionDistribution([0.25, 0.75])) == 2
