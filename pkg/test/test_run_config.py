import pytest

from cartanquot.exceptions import ConfigurationException
from cartanquot.run_config import DEFAULT_SEED, RunConfig

ENV_NAMES = ["CARTANQUOT_SEED", "CARTANQUOT_TOL", "CARTANQUOT_SAMPLES", "CARTANQUOT_FORMAT", "CARTANQUOT_JOBS"]


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.seed == DEFAULT_SEED == 20230101
        assert config.tol == 1e-12
        assert config.samples is None
        assert config.output_format == "json"
        assert config.jobs == 1

    def test_explicit_arguments(self):
        config = RunConfig(seed=7, tol=1e-9, samples=500, output_format="csv", jobs=3)
        assert config.to_json() == {"seed": 7, "tol": 1e-9, "samples": 500, "format": "csv", "jobs": 3}

    def test_environment_fills_unset_values(self, monkeypatch):
        monkeypatch.setenv("CARTANQUOT_SEED", "11")
        monkeypatch.setenv("CARTANQUOT_FORMAT", "text")
        config = RunConfig(output_format="csv")
        assert config.seed == 11, "the environment should provide the seed"
        assert config.output_format == "csv", "explicit arguments win over the environment"

    def test_ini_file(self, tmp_path, monkeypatch):
        path = tmp_path / "run.conf"
        path.write_text("[run]\nseed=42\nsamples=2000\njobs=2\n")
        monkeypatch.setenv("CARTANQUOT_SAMPLES", "10")
        monkeypatch.setenv("CARTANQUOT_TOL", "1e-6")
        config = RunConfig(str(path), jobs=4)
        assert config.seed == 42
        assert config.samples == 2000, "the file wins over the environment"
        assert config.tol == 1e-6
        assert config.jobs == 4, "explicit arguments win over the file"

    def test_dict_config_warns(self):
        with pytest.warns(UserWarning):
            config = RunConfig({"seed": 3, "format": "text"})
        assert config.seed == 3 and config.output_format == "text"

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(ConfigurationException):
            RunConfig(str(tmp_path / "missing.conf"))
        broken = tmp_path / "broken.conf"
        broken.write_text("seed = 1\n")
        with pytest.raises(ConfigurationException):
            RunConfig(str(broken))

    @pytest.mark.parametrize("kwargs", [
        {"seed": -1},
        {"seed": 2 ** 64},
        {"seed": "abc"},
        {"tol": -1.0},
        {"tol": float("inf")},
        {"tol": float("nan")},
        {"samples": 0},
        {"jobs": 0},
        {"output_format": "xml"},
    ])
    def test_invalid_values(self, kwargs):
        with pytest.raises(ConfigurationException):
            RunConfig(**kwargs)

    def test_invalid_environment_value(self, monkeypatch):
        monkeypatch.setenv("CARTANQUOT_JOBS", "many")
        with pytest.raises(ConfigurationException):
            RunConfig()

    def test_samples_or(self):
        assert RunConfig().samples_or(1000) == 1000
        assert RunConfig(samples=50).samples_or(1000) == 50
        assert RunConfig(samples=50).samples_or(1000, minimum=100) == 100, "the minimum is enforced"

    def test_streams_are_deterministic(self):
        first, second = RunConfig(seed=5), RunConfig(seed=5)
        assert first.seed_for("kernel") == second.seed_for("kernel")
        assert first.seed_for("kernel") != first.seed_for("volume")
        assert first.rng("kernel").random() == second.rng("kernel").random()

    def test_json_round_trip_and_equality(self):
        config = RunConfig(seed=9, samples=100)
        assert RunConfig.from_json(config.to_json()) == config
        assert config != RunConfig(seed=10, samples=100)
        assert "seed 9" in str(config)
