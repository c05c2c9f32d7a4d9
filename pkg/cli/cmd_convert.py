"""
cmd_convert.py - convert annotation files to the canonical format.

Each input becomes <output-dir>/<stem>.txt with one "frame id x y" record
per line, in input order, plus a manifest.json listing the scenes.
With --dump-windows every scene's windows are also written to
<stem>.windows.txt in the window interchange format.
Converting a canonical file again yields a byte-identical file.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import argparse
import pathlib

from cli.common import EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from trajectories.interchange import write_windows
from trajectories.scene_loader import build_scene, get_format_spec, read_records, write_canonical, write_manifest
from trajectories.windows import slice_windows
from utils.utils_errors import ConfigError, DataError
from utils.utils_logger import logger


def add_parser(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("convert", help="Convert annotation files to canonical form")
    parser.add_argument("inputs", nargs="+", type=pathlib.Path, help="Annotation files")
    parser.add_argument("--format", default="canonical", help="canonical, csv, tsv or transposed")
    parser.add_argument("--columns", help="Column order, e.g. frame,id,y,x")
    parser.add_argument("--output-dir", default="data/canonical", help="Directory for canonical files")
    parser.add_argument(
        "--dump-windows", action="store_true", help="Also write each scene's windows to <stem>.windows.txt"
    )
    parser.set_defaults(handler=run)
    return parser


def convert_files(
    inputs: list[pathlib.Path],
    format_name: str,
    columns: str | None,
    output_dir: pathlib.Path,
    dump_windows: bool = False,
) -> dict[str, pathlib.Path]:
    """Convert every input; returns scene name -> canonical file."""
    format_spec = get_format_spec(format_name, columns)
    output_dir = pathlib.Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = {}
    for path in inputs:
        path = pathlib.Path(path)
        if not path.exists():
            raise ConfigError(f"input file not found: {path}")
        records = list(read_records(path, format_spec))
        target = output_dir / f"{path.stem}.txt"
        count = write_canonical(target, records)
        logger.info(f"Converted {path} -> {target} ({count} records)")
        if dump_windows:
            write_windows(output_dir / f"{path.stem}.windows.txt", slice_windows(build_scene(path.stem, records)))
        written[path.stem] = target
    write_manifest(output_dir / "manifest.json", written)
    return written


def run(args: argparse.Namespace) -> int:
    try:
        convert_files(args.inputs, args.format, args.columns, pathlib.Path(args.output_dir), args.dump_windows)
    except ConfigError as e:
        logger.error(f"convert: {e}")
        return EXIT_USAGE
    except (DataError, OSError) as e:
        logger.error(f"convert failed: {e}")
        return EXIT_FAILURE
    return EXIT_OK
