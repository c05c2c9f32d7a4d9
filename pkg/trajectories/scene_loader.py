"""
scene_loader.py

Read pedestrian annotation files into Scenes.

Canonical format: plain text, whitespace-delimited, one observation per line:
    frame  pedestrian_id  x  y
Other exports are handled with a FormatSpec (column order, delimiter, and
the transposed 4-row layout where rows are frame, id, x, y).

Example canonical line:
    780 1 8.46 3.59
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import json
import math
import pathlib
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from utils.utils_errors import ConfigError, ParseError, ValidationError
from utils.utils_logger import logger

CANONICAL_COLUMNS = ("frame", "id", "x", "y")
BENCHMARK_SCENES = ("ETH-Uni", "Hotel", "Zara1", "Zara2", "UCY-Uni")

#####################################
# Format Specification
#####################################


@dataclass(frozen=True)
class FormatSpec:
    """Column order plus delimiter (None means any whitespace)."""

    columns: tuple[str, ...] = CANONICAL_COLUMNS
    delimiter: str | None = None
    transposed: bool = False

    def __post_init__(self):
        if sorted(self.columns) != sorted(CANONICAL_COLUMNS):
            raise ConfigError(
                f"columns must be a permutation of {','.join(CANONICAL_COLUMNS)}, got {self.columns}"
            )


FORMATS: dict[str, FormatSpec] = {
    "canonical": FormatSpec(),
    "csv": FormatSpec(delimiter=","),
    "tsv": FormatSpec(delimiter="\t"),
    "transposed": FormatSpec(delimiter=",", transposed=True),
}


def get_format_spec(name: str, columns: str | None = None) -> FormatSpec:
    """Look up a named format, optionally overriding its column order ("frame,id,y,x")."""
    if name not in FORMATS:
        raise ConfigError(f"unknown format '{name}', expected one of {sorted(FORMATS)}")
    spec = FORMATS[name]
    if columns:
        order = tuple(c.strip() for c in columns.split(","))
        spec = FormatSpec(columns=order, delimiter=spec.delimiter, transposed=spec.transposed)
    return spec


#####################################
# Scene Types
#####################################


@dataclass(frozen=True, eq=False)
class Trajectory:
    """A gap-free track piece of one pedestrian."""

    pedestrian_id: int
    frames: np.ndarray
    positions: np.ndarray

    def __len__(self) -> int:
        return len(self.frames)


@dataclass(eq=False)
class Scene:
    """All pedestrian tracks of one recording, in world coordinates."""

    name: str
    trajectories: list[Trajectory]
    frame_step: int
    source: str | None = field(default=None, compare=False)

    @property
    def tracks(self) -> dict[int, list[Trajectory]]:
        """pedestrian id -> its gap-free trajectories, in frame order."""
        grouped: dict[int, list[Trajectory]] = defaultdict(list)
        for trajectory in self.trajectories:
            grouped[trajectory.pedestrian_id].append(trajectory)
        return dict(grouped)

    @cached_property
    def frame_index(self) -> dict[int, dict[int, np.ndarray]]:
        """frame -> {pedestrian id -> position}, used for neighbor lookups."""
        index: dict[int, dict[int, np.ndarray]] = defaultdict(dict)
        for trajectory in self.trajectories:
            for frame, position in zip(trajectory.frames, trajectory.positions):
                index[int(frame)][trajectory.pedestrian_id] = position
        return dict(index)

    def __getstate__(self):
        state = self.__dict__.copy()
        state.pop("frame_index", None)
        return state


#####################################
# Record Reading
#####################################


def _split(line: str, delimiter: str | None) -> list[str]:
    return [token.strip() for token in line.strip().split(delimiter)]


def _to_int(token: str, what: str, line_number: int, path: str) -> int:
    try:
        value = float(token)
    except ValueError as e:
        raise ParseError(f"{what} '{token}' is not a number", line_number, path) from e
    if not value.is_integer():
        raise ParseError(f"{what} '{token}' is not an integer", line_number, path)
    return int(value)


def _to_coordinate(token: str, what: str, line_number: int, path: str) -> float:
    try:
        value = float(token)
    except ValueError as e:
        raise ParseError(f"{what} '{token}' is not a number", line_number, path) from e
    if not math.isfinite(value):
        raise ValidationError(f"{path}:{line_number}: non-finite {what} '{token}'")
    return value


def read_records(path: pathlib.Path, format_spec: FormatSpec) -> Iterator[tuple[int, int, float, float]]:
    """
    Yield (frame, pedestrian_id, x, y) records one by one.

    Blank lines and lines starting with '#' are skipped.
    """
    path = pathlib.Path(path)
    source = str(path)
    lines = path.read_text(encoding="utf-8").splitlines()

    if format_spec.transposed:
        rows = [(n, _split(line, format_spec.delimiter)) for n, line in enumerate(lines, start=1) if line.strip()]
        if len(rows) != 4:
            raise ParseError(f"transposed format needs 4 rows, found {len(rows)}", len(lines), source)
        if len({len(tokens) for _, tokens in rows}) != 1:
            raise ParseError("transposed rows differ in length", rows[-1][0], source)
        columns = dict(zip(format_spec.columns, rows))
        for column_number in range(len(rows[0][1])):
            fields = {name: tokens[column_number] for name, (_, tokens) in columns.items()}
            line_number = column_number + 1
            yield (
                _to_int(fields["frame"], "frame", line_number, source),
                _to_int(fields["id"], "pedestrian id", line_number, source),
                _to_coordinate(fields["x"], "x", line_number, source),
                _to_coordinate(fields["y"], "y", line_number, source),
            )
        return

    for line_number, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        tokens = _split(line, format_spec.delimiter)
        if len(tokens) != 4:
            raise ParseError(f"expected 4 fields, found {len(tokens)}", line_number, source)
        fields = dict(zip(format_spec.columns, tokens))
        yield (
            _to_int(fields["frame"], "frame", line_number, source),
            _to_int(fields["id"], "pedestrian id", line_number, source),
            _to_coordinate(fields["x"], "x", line_number, source),
            _to_coordinate(fields["y"], "y", line_number, source),
        )


#####################################
# Scene Building
#####################################


def infer_frame_step(frames: np.ndarray) -> int:
    """Smallest positive difference between distinct frame numbers (1 if undefined)."""
    distinct = np.unique(frames)
    if len(distinct) < 2:
        return 1
    return int(np.diff(distinct).min())


def build_scene(
    name: str,
    records: list[tuple[int, int, float, float]],
    frame_step: int | None = None,
    source: str | None = None,
) -> Scene:
    """Group records by pedestrian, sort by frame and split tracks at frame gaps."""
    per_pedestrian: dict[int, dict[int, tuple[float, float]]] = defaultdict(dict)
    for frame, pedestrian_id, x, y in records:
        track = per_pedestrian[pedestrian_id]
        if frame in track:
            raise ValidationError(
                f"scene '{name}': pedestrian {pedestrian_id} has two records at frame {frame}"
            )
        track[frame] = (x, y)

    all_frames = np.array([r[0] for r in records], dtype=np.int64)
    step = frame_step or infer_frame_step(all_frames)

    trajectories: list[Trajectory] = []
    gaps = 0
    for pedestrian_id in sorted(per_pedestrian):
        track = per_pedestrian[pedestrian_id]
        frames = np.array(sorted(track), dtype=np.int64)
        positions = np.array([track[f] for f in frames], dtype=np.float64).reshape(-1, 2)
        breaks = np.flatnonzero(np.diff(frames) != step) + 1
        gaps += len(breaks)
        for piece_frames, piece_positions in zip(np.split(frames, breaks), np.split(positions, breaks)):
            piece_frames.setflags(write=False)
            piece_positions.setflags(write=False)
            trajectories.append(Trajectory(pedestrian_id, piece_frames, piece_positions))

    logger.info(
        f"Scene '{name}': {len(records)} records, {len(per_pedestrian)} pedestrians, "
        f"{len(trajectories)} trajectories ({gaps} gap splits), frame step {step}"
    )
    return Scene(name=name, trajectories=trajectories, frame_step=step, source=source)


def load_scene(
    path: pathlib.Path,
    format_spec: FormatSpec = FORMATS["canonical"],
    name: str | None = None,
    frame_step: int | None = None,
) -> Scene:
    """Read one annotation file into a Scene named after the file stem by default."""
    path = pathlib.Path(path)
    logger.info(f"Loading scene from {path}")
    records = list(read_records(path, format_spec))
    return build_scene(name or path.stem, records, frame_step=frame_step, source=str(path))


#####################################
# Manifest
#####################################


def read_manifest(manifest_path: pathlib.Path) -> tuple[dict[str, pathlib.Path], FormatSpec]:
    """
    Read a manifest mapping scene names to annotation files.

    {"format": "canonical", "columns": "frame,id,x,y",
     "scenes": {"ETH-Uni": "eth.txt", "Hotel": "hotel.txt"}}
    Relative paths resolve against the manifest's folder.
    """
    manifest_path = pathlib.Path(manifest_path)
    if not manifest_path.exists():
        raise ConfigError(f"manifest not found: {manifest_path}")
    try:
        data = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"manifest {manifest_path} is not valid JSON: {e}") from e
    scenes = data.get("scenes")
    if not isinstance(scenes, dict) or not scenes:
        raise ConfigError(f"manifest {manifest_path} lists no scenes")
    format_spec = get_format_spec(data.get("format", "canonical"), data.get("columns"))
    paths = {
        name: (manifest_path.parent / relative).resolve()
        for name, relative in scenes.items()
    }
    return paths, format_spec


def load_manifest(manifest_path: pathlib.Path) -> list[Scene]:
    """Load every scene listed in a manifest, in manifest order."""
    paths, format_spec = read_manifest(manifest_path)
    scenes = []
    for name, path in paths.items():
        if not path.exists():
            raise ConfigError(f"scene '{name}' file not found: {path}")
        scenes.append(load_scene(path, format_spec, name=name))
    return scenes


def write_manifest(manifest_path: pathlib.Path, scene_files: dict[str, pathlib.Path]) -> None:
    """Write a canonical-format manifest with paths relative to its folder."""
    manifest_path = pathlib.Path(manifest_path)
    entries = {}
    for name, path in scene_files.items():
        path = pathlib.Path(path)
        try:
            entries[name] = str(path.resolve().relative_to(manifest_path.parent.resolve()))
        except ValueError:
            entries[name] = str(path.resolve())
    payload = {"format": "canonical", "scenes": entries}
    manifest_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Manifest written: {manifest_path}")


def format_canonical_line(frame: int, pedestrian_id: int, x: float, y: float) -> str:
    """Shortest round-trip float text, so re-converting a canonical file is byte-identical."""
    return f"{int(frame)} {int(pedestrian_id)} {float(x)!r} {float(y)!r}"


def write_canonical(path: pathlib.Path, records: list[tuple[int, int, float, float]]) -> int:
    """Write records in canonical form, preserving input order. Returns the record count."""
    path = pathlib.Path(path)
    lines = [format_canonical_line(*record) for record in records]
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    logger.info(f"Wrote {len(lines)} canonical records to {path}")
    return len(lines)
