import json

import numpy as np
import pytest

from trajectories.scene_loader import (
    build_scene,
    get_format_spec,
    infer_frame_step,
    load_manifest,
    load_scene,
    read_records,
    write_canonical,
)
from utils.utils_errors import ConfigError, ParseError, ValidationError


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestReading:
    def test_canonical_lines(self, tmp_path):
        path = write(tmp_path, "s.txt", "# comment\n780 1 8.46 3.59\n\n790 1 8.50 3.60\n")
        records = list(read_records(path, get_format_spec("canonical")))
        assert records == [(780, 1, 8.46, 3.59), (790, 1, 8.5, 3.6)]

    def test_float_formatted_ids_are_accepted(self, tmp_path):
        path = write(tmp_path, "s.csv", "10.0,3.0,1.5,2.5\n")
        assert list(read_records(path, get_format_spec("csv"))) == [(10, 3, 1.5, 2.5)]

    def test_column_override_swaps_coordinates(self, tmp_path):
        path = write(tmp_path, "s.txt", "0 1 2.0 7.0\n")
        (record,) = read_records(path, get_format_spec("canonical", "frame,id,y,x"))
        assert record == (0, 1, 7.0, 2.0)

    def test_transposed_layout(self, tmp_path):
        path = write(tmp_path, "t.csv", "0,0,10\n1,2,1\n0.5,1.5,0.6\n4,5,4.1\n")
        records = list(read_records(path, get_format_spec("transposed")))
        assert records == [(0, 1, 0.5, 4.0), (0, 2, 1.5, 5.0), (10, 1, 0.6, 4.1)]

    def test_bad_number_reports_line(self, tmp_path):
        path = write(tmp_path, "s.txt", "0 1 1.0 1.0\n10 1 abc 1.0\n")
        with pytest.raises(ParseError) as info:
            list(read_records(path, get_format_spec("canonical")))
        assert info.value.line_number == 2

    def test_wrong_field_count(self, tmp_path):
        path = write(tmp_path, "s.txt", "0 1 1.0\n")
        with pytest.raises(ParseError):
            list(read_records(path, get_format_spec("canonical")))

    def test_non_finite_coordinate(self, tmp_path):
        path = write(tmp_path, "s.txt", "0 1 nan 1.0\n")
        with pytest.raises(ValidationError):
            list(read_records(path, get_format_spec("canonical")))

    def test_unknown_format(self):
        with pytest.raises(ConfigError):
            get_format_spec("parquet")


class TestSceneBuilding:
    def test_frame_step_is_smallest_difference(self):
        assert infer_frame_step(np.array([0, 10, 10, 30, 40])) == 10
        assert infer_frame_step(np.array([5])) == 1

    def test_gap_splits_track(self):
        records = [(f, 1, float(f), 0.0) for f in (0, 10, 20, 50, 60)] + [(30, 2, 0.0, 0.0), (40, 2, 0.0, 0.0)]
        scene = build_scene("gap", records)
        assert scene.frame_step == 10
        pieces = scene.tracks[1]
        assert [list(p.frames) for p in pieces] == [[0, 10, 20], [50, 60]]

    def test_duplicate_frame_is_rejected(self):
        with pytest.raises(ValidationError):
            build_scene("dup", [(0, 1, 0.0, 0.0), (0, 1, 1.0, 1.0)])

    def test_tracks_are_frame_sorted(self, tmp_path):
        path = write(tmp_path, "s.txt", "20 1 2 0\n0 1 0 0\n10 1 1 0\n")
        scene = load_scene(path)
        (trajectory,) = scene.trajectories
        np.testing.assert_array_equal(trajectory.positions[:, 0], [0, 1, 2])
        assert scene.name == "s"

    def test_frame_index_lists_co_present_pedestrians(self):
        scene = build_scene("two", [(0, 1, 0.0, 0.0), (0, 2, 1.0, 1.0), (10, 1, 0.5, 0.0)])
        assert set(scene.frame_index[0]) == {1, 2}
        assert set(scene.frame_index[10]) == {1}


class TestManifest:
    def test_manifest_paths_resolve_against_its_folder(self, tmp_path):
        (tmp_path / "scenes").mkdir()
        write_canonical(tmp_path / "scenes" / "a.txt", [(0, 1, 0.0, 0.0), (10, 1, 1.0, 0.0)])
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps({"scenes": {"A": "scenes/a.txt"}}))
        (scene,) = load_manifest(manifest)
        assert scene.name == "A"
        assert len(scene.trajectories[0]) == 2

    def test_missing_scene_file(self, tmp_path):
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps({"scenes": {"A": "nope.txt"}}))
        with pytest.raises(ConfigError):
            load_manifest(manifest)

    def test_canonical_writer_uses_round_trip_floats(self, tmp_path):
        path = tmp_path / "c.txt"
        write_canonical(path, [(0, 1, 0.1, 1e-17)])
        assert path.read_text() == "0 1 0.1 1e-17\n"
