"""
checkpoints.py - versioned model files.

A checkpoint is a .npz archive: one array per parameter plus a JSON string
under "__meta__" holding the format version, the architecture descriptor,
the training configuration, the seed and the hash of the run
configuration that produced it.
"""

from __future__ import annotations

import json
import pathlib

import numpy as np

from neural.features import FeatureSpec
from neural.networks import FFNetwork, Network, REDNetwork
from utils.utils_errors import ConfigError
from utils.utils_logger import logger

CHECKPOINT_VERSION = 1
META_KEY = "__meta__"


def save_checkpoint(
    path: pathlib.Path,
    network: Network,
    train_config: dict | None = None,
    seed: int | None = None,
    config_hash: str = "",
) -> pathlib.Path:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {
        "version": CHECKPOINT_VERSION,
        "architecture": network.architecture(),
        "train_config": train_config or {},
        "seed": seed,
        "config_hash": config_hash,
    }
    arrays = network.get_parameters()
    arrays[META_KEY] = np.array(json.dumps(meta, sort_keys=True))
    with path.open("wb") as handle:
        np.savez(handle, **arrays)
    logger.info(f"Checkpoint written: {path}")
    return path


def load_checkpoint(path: pathlib.Path) -> tuple[Network, dict]:
    path = pathlib.Path(path)
    if not path.exists():
        raise ConfigError(f"checkpoint not found: {path}")
    with np.load(path, allow_pickle=False) as archive:
        meta = json.loads(str(archive[META_KEY]))
        if meta.get("version") != CHECKPOINT_VERSION:
            raise ConfigError(f"checkpoint {path} has unsupported version {meta.get('version')}")
        params = {name: archive[name] for name in archive.files if name != META_KEY}

    architecture = meta["architecture"]
    spec = FeatureSpec(**architecture["features"])
    if architecture["family"] == "ff":
        network: Network = FFNetwork(spec, hidden=tuple(architecture["hidden"]))
    elif architecture["family"] == "red":
        network = REDNetwork(
            spec,
            embedding=architecture["embedding"],
            state=architecture["state"],
            decoder_hidden=architecture["decoder_hidden"],
        )
    else:
        raise ConfigError(f"checkpoint {path} has unknown family {architecture['family']}")
    network.set_parameters(params)
    logger.info(f"Checkpoint loaded: {path} ({architecture['family']})")
    return network, meta
