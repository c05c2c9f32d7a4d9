"""
utils_config.py - environment defaults and run configuration files.

Defaults come from the environment (a local .env file is honoured).
A run configuration is a JSON file; command-line flags override it.
Precedence: flags > config file > environment > built-in defaults.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import hashlib
import json
import os
import pathlib
from dataclasses import asdict, dataclass, field
from typing import Any

# Import external packages
from dotenv import load_dotenv

# Import functions from local modules
from utils.utils_errors import ConfigError
from utils.utils_logger import logger

#####################################
# Load Environment Variables
#####################################

load_dotenv()

#####################################
# Default Configurations
#####################################

DEFAULT_SEED = 0
DEFAULT_WORKERS = 1
DEFAULT_OUTPUT_DIR = "results"
DEFAULT_MANIFEST = "data/manifest.json"

OBSERVATION_STEPS = 8
PREDICTION_HORIZON = 12
VALIDATION_FRACTION = 0.10
TIMESTEP_SECONDS = 0.4

MODEL_KINDS = ("cvm", "cvm_sampled", "const_acc", "linreg", "ff", "red")
REPRESENTATIONS = ("absolute", "relative")
NEIGHBOR_VARIANTS = ("Basic", "History", "Future")

#####################################
# Getter Functions for .env Variables
#####################################


def get_default_seed() -> int:
    """Fetch the default seed from environment or use default."""
    seed = int(os.getenv("CVM_SEED", DEFAULT_SEED))
    logger.debug(f"Default seed: {seed}")
    return seed


def get_default_workers() -> int:
    """Fetch the worker count from environment or use default."""
    workers = int(os.getenv("CVM_WORKERS", DEFAULT_WORKERS))
    logger.debug(f"Default workers: {workers}")
    return workers


def get_default_output_dir() -> pathlib.Path:
    """Fetch the output directory from environment or use default."""
    output_dir = pathlib.Path(os.getenv("CVM_OUTPUT_DIR", DEFAULT_OUTPUT_DIR))
    logger.debug(f"Default output directory: {output_dir}")
    return output_dir


def get_default_manifest() -> pathlib.Path:
    """Fetch the dataset manifest path from environment or use default."""
    manifest = pathlib.Path(os.getenv("CVM_MANIFEST", DEFAULT_MANIFEST))
    logger.debug(f"Default manifest: {manifest}")
    return manifest


#####################################
# Run Configuration
#####################################


@dataclass
class ModelConfig:
    """One model entry of a run configuration."""

    name: str
    kind: str
    representation: str = "absolute"
    rotations: bool = False
    neighbor_variant: str = "Basic"
    history_steps: int | None = None
    k: int = 20
    sigma_deg: float = 25.0
    hidden: tuple[int, ...] = (60, 30)
    epochs: int = 35
    learning_rate: float = 0.0004
    batch_size: int = 64

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ConfigError(f"model '{self.name}': unknown kind '{self.kind}'")
        if self.representation not in REPRESENTATIONS:
            raise ConfigError(
                f"model '{self.name}': unknown representation '{self.representation}'"
            )
        if self.neighbor_variant not in NEIGHBOR_VARIANTS:
            raise ConfigError(
                f"model '{self.name}': unknown neighbor variant '{self.neighbor_variant}'"
            )
        if self.rotations and self.representation != "relative":
            raise ConfigError(
                f"model '{self.name}': rotations are applied on top of the relative representation"
            )
        if self.neighbor_variant != "Basic" and self.kind not in ("ff", "red"):
            raise ConfigError(
                f"model '{self.name}': neighbor variants only apply to neural models"
            )
        if self.epochs <= 0 or self.batch_size <= 0 or self.learning_rate <= 0:
            raise ConfigError(
                f"model '{self.name}': epochs, batch size and learning rate must be positive"
            )
        if self.k < 1:
            raise ConfigError(f"model '{self.name}': k must be at least 1")
        self.hidden = tuple(int(h) for h in self.hidden)


@dataclass
class AnalysisConfig:
    """Options of the analysis experiments."""

    model_families: tuple[str, ...] = ("ff", "red")
    epochs: int = 35
    attribution_network: str = "train"
    history_lengths: tuple[int, ...] = (7, 6, 5, 4, 3, 2, 1)

    def __post_init__(self):
        self.model_families = tuple(self.model_families)
        self.history_lengths = tuple(int(h) for h in self.history_lengths)
        for family in self.model_families:
            if family not in ("ff", "red"):
                raise ConfigError(f"unknown analysis model family '{family}'")
        for length in self.history_lengths:
            if not 1 <= length <= OBSERVATION_STEPS - 1:
                raise ConfigError(f"history length {length} outside 1..7")


@dataclass
class RunConfig:
    """A resolved run configuration."""

    manifest: pathlib.Path
    output_dir: pathlib.Path
    seeds: tuple[int, ...]
    workers: int
    test_scenes: tuple[str, ...] | None = None
    models: list[ModelConfig] = field(default_factory=list)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    validation_fraction: float = VALIDATION_FRACTION

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["manifest"] = str(self.manifest)
        data["output_dir"] = str(self.output_dir)
        return data

    @property
    def config_hash(self) -> str:
        """Short SHA-256 over the canonical JSON of everything except the output directory."""
        data = self.to_dict()
        data.pop("output_dir")
        data.pop("workers")
        canonical = json.dumps(data, sort_keys=True, default=list)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


TOP_LEVEL_KEYS = {
    "manifest",
    "output_dir",
    "seeds",
    "workers",
    "test_scenes",
    "protocol",
    "models",
    "analysis",
}
PROTOCOL_KEYS = {"observation", "horizon", "validation_fraction"}


def _check_keys(section: str, data: dict, allowed: set[str]) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown keys in {section}: {', '.join(unknown)}")


def parse_run_config(data: dict[str, Any], base_dir: pathlib.Path | None = None) -> RunConfig:
    """Build a RunConfig from decoded JSON, filling gaps from the environment."""
    if not isinstance(data, dict):
        raise ConfigError("run configuration must be a JSON object")
    _check_keys("configuration", data, TOP_LEVEL_KEYS)

    protocol = data.get("protocol", {})
    _check_keys("protocol", protocol, PROTOCOL_KEYS)
    if protocol.get("observation", OBSERVATION_STEPS) != OBSERVATION_STEPS:
        raise ConfigError(f"protocol observation must be {OBSERVATION_STEPS}")
    if protocol.get("horizon", PREDICTION_HORIZON) != PREDICTION_HORIZON:
        raise ConfigError(f"protocol horizon must be {PREDICTION_HORIZON}")
    validation_fraction = float(protocol.get("validation_fraction", VALIDATION_FRACTION))
    if not 0.0 <= validation_fraction < 1.0:
        raise ConfigError("validation_fraction must lie in [0, 1)")

    manifest = pathlib.Path(data.get("manifest", get_default_manifest()))
    if base_dir is not None and not manifest.is_absolute() and "manifest" in data:
        manifest = base_dir / manifest

    seeds = data.get("seeds", [get_default_seed()])
    if isinstance(seeds, int):
        seeds = [seeds]
    if not seeds:
        raise ConfigError("at least one seed is required")

    model_fields = set(ModelConfig.__dataclass_fields__)
    models = []
    for entry in data.get("models", []):
        _check_keys(f"model '{entry.get('name', '?')}'", entry, model_fields)
        try:
            models.append(ModelConfig(**entry))
        except TypeError as e:
            raise ConfigError(f"invalid model entry {entry}: {e}") from e
    names = [m.name for m in models]
    if len(set(names)) != len(names):
        raise ConfigError(f"duplicate model names: {names}")

    analysis_data = data.get("analysis", {})
    _check_keys("analysis", analysis_data, set(AnalysisConfig.__dataclass_fields__))
    analysis = AnalysisConfig(**analysis_data)

    test_scenes = data.get("test_scenes")
    return RunConfig(
        manifest=manifest,
        output_dir=pathlib.Path(data.get("output_dir", get_default_output_dir())),
        seeds=tuple(int(s) for s in seeds),
        workers=int(data.get("workers", get_default_workers())),
        test_scenes=tuple(test_scenes) if test_scenes else None,
        models=models,
        analysis=analysis,
        validation_fraction=validation_fraction,
    )


def load_run_config(path: pathlib.Path) -> RunConfig:
    """Read a JSON run configuration from disk."""
    path = pathlib.Path(path)
    logger.info(f"Loading run configuration: {path}")
    if not path.exists():
        raise ConfigError(f"configuration file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"configuration {path} is not valid JSON: {e}") from e
    return parse_run_config(data, base_dir=path.parent)


def apply_overrides(
    config: RunConfig,
    output_dir: str | None = None,
    seed: int | None = None,
    workers: int | None = None,
    model: str | None = None,
    test_scene: str | None = None,
) -> RunConfig:
    """Apply command-line flag values on top of a loaded configuration."""
    if output_dir is not None:
        config.output_dir = pathlib.Path(output_dir)
    if seed is not None:
        config.seeds = (int(seed),)
    if workers is not None:
        if workers < 1:
            raise ConfigError("--workers must be at least 1")
        config.workers = int(workers)
    if model is not None:
        selected = [m for m in config.models if m.name == model]
        if not selected:
            raise ConfigError(f"--model '{model}' not found in configuration")
        config.models = selected
    if test_scene is not None:
        config.test_scenes = (test_scene,)
    return config
