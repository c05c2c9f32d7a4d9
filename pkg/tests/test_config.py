import json
import pathlib

import pytest

from utils.utils_config import (
    ModelConfig,
    apply_overrides,
    get_default_seed,
    get_default_workers,
    load_run_config,
    parse_run_config,
)
from utils.utils_errors import ConfigError

TABLE_ONE = pathlib.Path(__file__).resolve().parents[1] / "config" / "table1.json"


class TestParsing:
    def test_minimal_configuration(self):
        config = parse_run_config({"models": [{"name": "OUR", "kind": "cvm"}], "seeds": 3})
        assert config.seeds == (3,)
        assert config.models[0].epochs == 35
        assert config.models[0].hidden == (60, 30)
        assert config.validation_fraction == pytest.approx(0.1)

    def test_unknown_keys_are_rejected(self):
        with pytest.raises(ConfigError, match="colour"):
            parse_run_config({"colour": "blue"})
        with pytest.raises(ConfigError):
            parse_run_config({"models": [{"name": "OUR", "kind": "cvm", "speed": 1}]})

    @pytest.mark.parametrize("protocol", [{"observation": 10}, {"horizon": 8}, {"validation_fraction": 1.0}])
    def test_protocol_is_fixed(self, protocol):
        with pytest.raises(ConfigError):
            parse_run_config({"protocol": protocol})

    def test_duplicate_model_names(self):
        models = [{"name": "A", "kind": "cvm"}, {"name": "A", "kind": "const_acc"}]
        with pytest.raises(ConfigError, match="duplicate"):
            parse_run_config({"models": models})

    def test_analysis_history_lengths(self):
        with pytest.raises(ConfigError):
            parse_run_config({"analysis": {"history_lengths": [8]}})

    def test_manifest_resolves_next_to_the_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"manifest": "data/manifest.json"}))
        assert load_run_config(path).manifest == tmp_path / "data" / "manifest.json"

    def test_missing_or_broken_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_run_config(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("{ not json")
        with pytest.raises(ConfigError):
            load_run_config(broken)

    def test_shipped_benchmark_configuration(self):
        config = load_run_config(TABLE_ONE)
        names = [m.name for m in config.models]
        assert names == ["ConstAcc", "Lin", "FF", "RED", "OUR", "OUR-S"]
        assert config.seeds == (0, 1, 2)


class TestHash:
    def test_output_location_and_workers_do_not_change_the_hash(self):
        first = parse_run_config({"output_dir": "a", "workers": 1})
        second = parse_run_config({"output_dir": "b", "workers": 4})
        assert first.config_hash == second.config_hash
        assert len(first.config_hash) == 12

    def test_protocol_changes_change_the_hash(self):
        first = parse_run_config({"seeds": [0]})
        second = parse_run_config({"seeds": [1]})
        third = parse_run_config({"seeds": [0], "models": [{"name": "OUR", "kind": "cvm"}]})
        assert len({first.config_hash, second.config_hash, third.config_hash}) == 3


class TestOverrides:
    def make(self):
        models = [{"name": "OUR", "kind": "cvm"}, {"name": "Lin", "kind": "linreg"}]
        return parse_run_config({"models": models, "seeds": [0, 1, 2]})

    def test_flags_win(self, tmp_path):
        config = apply_overrides(self.make(), output_dir=str(tmp_path), seed=5, workers=2, model="Lin", test_scene="Hotel")
        assert config.output_dir == tmp_path
        assert config.seeds == (5,)
        assert config.workers == 2
        assert [m.name for m in config.models] == ["Lin"]
        assert config.test_scenes == ("Hotel",)

    def test_unknown_model_flag(self):
        with pytest.raises(ConfigError):
            apply_overrides(self.make(), model="LSTM")

    def test_workers_must_be_positive(self):
        with pytest.raises(ConfigError):
            apply_overrides(self.make(), workers=0)


class TestEnvironment:
    def test_environment_defaults(self, monkeypatch):
        monkeypatch.setenv("CVM_SEED", "11")
        monkeypatch.setenv("CVM_WORKERS", "3")
        assert get_default_seed() == 11
        assert get_default_workers() == 3
        assert parse_run_config({}).seeds == (11,)

    def test_model_defaults(self):
        model = ModelConfig("FF", "ff")
        assert (model.learning_rate, model.batch_size) == (0.0004, 64)
