import numpy as np
import pytest

from neural.checkpoints import load_checkpoint, save_checkpoint
from neural.features import FeatureSpec
from neural.networks import FFNetwork, REDNetwork, build_network
from neural.training import TrainConfig, predict_window, predict_windows, train
from trajectories.scene_loader import build_scene
from trajectories.windows import full_length, slice_windows
from utils.utils_errors import ConfigError
from utils.utils_gen_synthetic_scenes import constant_velocity_records


@pytest.fixture(scope="module")
def constant_velocity_windows():
    records = constant_velocity_records(n_pedestrians=200, track_length=30, seed=8, stagger=0)
    windows = full_length(slice_windows(build_scene("cv", records)))
    return windows[:-200], windows[-200:]


def trained_parameters(windows, seed, family="ff"):
    rng = np.random.default_rng(seed)
    network = build_network(family, FeatureSpec("relative"), rng=rng)
    config = TrainConfig(epochs=2, seed=seed, rotations=True)
    network, _ = train(network, windows[:300], windows[300:340], config, rng=rng)
    return network.get_parameters()


class TestTraining:
    @pytest.mark.parametrize("family", ["ff", "red"])
    def test_same_seed_same_parameters(self, constant_velocity_windows, family):
        train_windows, _ = constant_velocity_windows
        first = trained_parameters(train_windows, 3, family)
        second = trained_parameters(train_windows, 3, family)
        for name in first:
            np.testing.assert_array_equal(first[name], second[name])

    def test_different_seed_different_parameters(self, constant_velocity_windows):
        train_windows, _ = constant_velocity_windows
        first = trained_parameters(train_windows, 3)
        second = trained_parameters(train_windows, 4)
        assert not np.array_equal(first["W1"], second["W1"])

    def test_learns_constant_velocity(self, constant_velocity_windows):
        train_windows, validation_windows = constant_velocity_windows
        rng = np.random.default_rng(0)
        network = FFNetwork(FeatureSpec("relative"), rng=rng)
        config = TrainConfig(learning_rate=0.003, epochs=60, seed=0)
        network, curves = train(network, train_windows, validation_windows, config, rng=rng)
        assert len(curves.train) == 60
        assert curves.validation[-1] < 2e-3
        assert curves.validation[-1] < curves.initial_train / 20

    def test_shortened_windows_only_is_an_error(self):
        records = constant_velocity_records(n_pedestrians=3, track_length=12, seed=1)
        windows = slice_windows(build_scene("short", records))
        network = FFNetwork(FeatureSpec("relative"))
        with pytest.raises(ConfigError):
            train(network, windows, [], TrainConfig(epochs=1))

    def test_invalid_train_config(self):
        with pytest.raises(ConfigError):
            TrainConfig(learning_rate=0.0)


class TestPrediction:
    def test_prediction_shapes(self, line_window):
        network = FFNetwork(FeatureSpec("relative"))
        assert len(predict_window(network, line_window)) == 12
        assert predict_windows(network, [line_window, line_window]).shape == (2, 12, 2)
        assert predict_windows(network, []).shape == (0, 12, 2)

    def test_representation_mismatch(self, line_window):
        network = FFNetwork(FeatureSpec("relative"))
        with pytest.raises(ConfigError):
            predict_window(network, line_window, representation="absolute")


class TestCheckpoints:
    @pytest.mark.parametrize(
        "network",
        [FFNetwork(FeatureSpec("absolute"), hidden=(8, 4)), REDNetwork(FeatureSpec("relative", 5))],
        ids=["ff", "red"],
    )
    def test_saved_network_predicts_the_same(self, tmp_path, line_window, network):
        path = save_checkpoint(tmp_path / "model.npz", network, {"epochs": 1}, seed=7)
        loaded, meta = load_checkpoint(path)
        assert meta["seed"] == 7
        assert meta["architecture"] == network.architecture()
        np.testing.assert_array_equal(
            predict_windows(loaded, [line_window]), predict_windows(network, [line_window])
        )

    def test_missing_checkpoint(self, tmp_path):
        with pytest.raises(ConfigError):
            load_checkpoint(tmp_path / "missing.npz")
