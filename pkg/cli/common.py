"""
common.py - flags, configuration resolution and exit codes shared by
every command.
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import argparse
import pathlib

from trajectories.scene_loader import Scene, load_manifest
from utils.utils_config import (
    RunConfig,
    apply_overrides,
    get_default_manifest,
    get_default_output_dir,
    get_default_seed,
    get_default_workers,
    load_run_config,
    parse_run_config,
)
from utils.utils_errors import ConfigError
from utils.utils_logger import logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

#####################################
# Flags
#####################################


def run_flags() -> argparse.ArgumentParser:
    """Parent parser with the flags every run command accepts."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=pathlib.Path, help="JSON run configuration")
    parser.add_argument("--output-dir", help="Directory for result files")
    parser.add_argument("--seed", type=int, help="Run with this single seed")
    parser.add_argument("--workers", type=int, help="Parallel fold workers")
    parser.add_argument("--model", help="Run only the named model of the configuration")
    parser.add_argument("--test-scene", help="Run only the fold holding out this scene")
    return parser


#####################################
# Configuration
#####################################


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config file (or environment defaults) with flag overrides on top."""
    if args.config is not None:
        config = load_run_config(args.config)
    else:
        logger.info("No --config given; using environment defaults")
        config = parse_run_config(
            {
                "manifest": str(get_default_manifest()),
                "output_dir": str(get_default_output_dir()),
                "seeds": [get_default_seed()],
                "workers": get_default_workers(),
            }
        )
    return apply_overrides(
        config,
        output_dir=args.output_dir,
        seed=args.seed,
        workers=args.workers,
        model=args.model,
        test_scene=args.test_scene,
    )


def load_scenes(config: RunConfig) -> list[Scene]:
    """Scenes of the manifest; requested test scenes must be among them."""
    scenes = load_manifest(config.manifest)
    names = [scene.name for scene in scenes]
    for test_scene in config.test_scenes or ():
        if test_scene not in names:
            raise ConfigError(f"test scene '{test_scene}' is not in manifest {config.manifest} ({names})")
    return scenes


def run_metadata(config: RunConfig) -> dict:
    return {
        "config_hash": config.config_hash,
        "seeds": list(config.seeds),
        "config": config.to_dict(),
    }


def seeds_text(config: RunConfig) -> str:
    return ";".join(str(s) for s in config.seeds)
