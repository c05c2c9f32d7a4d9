import numpy as np
import pytest

from tests.conftest import scene_of, straight_records
from trajectories.augmentation import augment_rotations
from trajectories.core_types import MotionHistory, displacements_to_positions
from trajectories.interchange import format_window, parse_window, read_windows, write_windows
from trajectories.splits import make_split
from trajectories.windows import TrajectoryWindow, full_length, slice_windows, to_relative, window_starts
from utils.utils_errors import ConfigError, ParseError, ValidationError


class TestSlicing:
    @pytest.mark.parametrize("length, expected", [(9, 0), (10, 1), (20, 11), (25, 16)])
    def test_window_counts(self, length, expected):
        assert len(window_starts(length)) == expected

    def test_full_and_shortened_windows(self):
        scene = scene_of("s", straight_records(1, 0, 25, (0, 0), (1, 0)))
        windows = slice_windows(scene)
        assert len(windows) == 16
        assert len(full_length(windows)) == 6
        assert [len(w.future) for w in windows[-3:]] == [4, 3, 2]

    def test_anchor_frame_is_last_observed_frame(self, line_window):
        assert line_window.anchor_frame == 70
        assert line_window.observed_frames() == list(range(0, 80, 10))
        assert line_window.future_frames(2) == [80, 90]

    def test_window_counts_on_random_lengths(self):
        rng = np.random.default_rng(12)
        lengths = rng.integers(1, 60, size=40)
        for length in lengths:
            spans = window_starts(int(length))
            assert len(spans) == max(0, int(length) - 9)
            assert all(10 <= size <= 20 and start + size <= length for start, size in spans)

        records = []
        for pedestrian_id, length in enumerate(lengths, start=1):
            records += straight_records(pedestrian_id, 0, int(length), (pedestrian_id, 0), (0.1, 0.2))
        windows = slice_windows(scene_of("random", records))
        assert len(windows) == sum(max(0, int(length) - 9) for length in lengths)

    def test_window_needs_eight_observed_positions(self, line_window):
        with pytest.raises(ValidationError):
            TrajectoryWindow("s", 1, 60, MotionHistory(line_window.observed.positions[1:]), line_window.future)

    def test_windows_never_cross_a_gap(self):
        records = straight_records(1, 0, 15, (0, 0), (1, 0)) + straight_records(1, 300, 15, (0, 0), (1, 0))
        windows = slice_windows(scene_of("gap", records))
        assert len(windows) == 2 * 6
        for window in windows:
            assert window.anchor_frame < 150 or window.anchor_frame >= 370


class TestRelative:
    def test_relative_sample_shapes(self, line_window):
        sample = to_relative(line_window)
        assert len(sample.history) == 7
        assert len(sample.target) == 12
        np.testing.assert_allclose(sample.history.displacements, [[0.5, 0.25]] * 7)

    def test_target_rebuilds_the_future(self, line_window):
        sample = to_relative(line_window)
        rebuilt = displacements_to_positions(sample.anchor, sample.target)
        np.testing.assert_allclose(rebuilt, line_window.future.positions, atol=1e-12)

    def test_rotation_keeps_anchor_and_lengths(self, line_window):
        rotated = line_window.rotated(np.pi / 2)
        np.testing.assert_allclose(rotated.anchor, line_window.anchor)
        step = to_relative(rotated).history.displacements[0]
        np.testing.assert_allclose(step, [-0.25, 0.5], atol=1e-12)
        assert rotated.rotation == pytest.approx(np.pi / 2)
        assert line_window.rotated(0.0) is line_window


class TestSplits:
    def test_leave_one_out_partition(self, isotropic_scenes):
        split = make_split(isotropic_scenes, "B", seed=0)
        assert {w.scene for w in split.test} == {"B"}
        assert {w.scene for w in split.train + split.validation} == {"A", "C"}
        pool = len(slice_windows(isotropic_scenes[0])) + len(slice_windows(isotropic_scenes[2]))
        assert len(split.validation) == int(round(pool * 0.10))
        assert len(split.train) + len(split.validation) == pool

    def test_split_is_seeded(self, isotropic_scenes):
        first = make_split(isotropic_scenes, "A", seed=4)
        second = make_split(isotropic_scenes, "A", seed=4)
        assert [w.key for w in first.validation] == [w.key for w in second.validation]
        other = make_split(isotropic_scenes, "A", seed=5)
        assert [w.key for w in other.validation] != [w.key for w in first.validation]

    def test_folds_are_disjoint(self, isotropic_scenes):
        for test_scene in ("A", "B", "C"):
            split = make_split(isotropic_scenes, test_scene, seed=2)
            parts = [{id(w) for w in split.train}, {id(w) for w in split.validation}, {id(w) for w in split.test}]
            assert not parts[0] & parts[1]
            assert not parts[0] & parts[2]
            assert not parts[1] & parts[2]
            keys = [w.key for w in split.train + split.validation + split.test]
            assert len(keys) == len(set(keys))

    def test_unknown_test_scene(self, isotropic_scenes):
        with pytest.raises(ConfigError):
            make_split(isotropic_scenes, "Nowhere", seed=0)


class TestAugmentation:
    def test_one_rotation_per_window(self, isotropic_scenes):
        windows = full_length(slice_windows(isotropic_scenes[0]))
        rotated = augment_rotations(windows, seed=1)
        assert len(rotated) == len(windows)
        for before, after in zip(windows, rotated):
            norms_before = np.linalg.norm(to_relative(before).target.displacements, axis=1)
            norms_after = np.linalg.norm(to_relative(after).target.displacements, axis=1)
            np.testing.assert_allclose(norms_after, norms_before, atol=1e-12)
            np.testing.assert_allclose(after.anchor, before.anchor)

    def test_same_seed_same_angles(self, line_window):
        (a,) = augment_rotations([line_window], seed=9)
        (b,) = augment_rotations([line_window], seed=9)
        assert a.rotation == b.rotation


class TestInterchange:
    def test_window_lines_parse_back(self, tmp_path, line_window):
        path = tmp_path / "windows.txt"
        write_windows(path, [line_window])
        (parsed,) = read_windows(path)
        assert parsed.key == line_window.key
        np.testing.assert_allclose(parsed.observed.positions, line_window.observed.positions)
        np.testing.assert_allclose(parsed.future.positions, line_window.future.positions)

    def test_truncated_line_is_a_parse_error(self, line_window):
        line = format_window(line_window)
        with pytest.raises(ParseError):
            parse_window(line.rsplit(" ", 3)[0], 1)
