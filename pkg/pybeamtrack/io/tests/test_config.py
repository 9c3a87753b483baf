import pytest


def test_parse_overrides():
    from pybeamtrack.io import parse_overrides

    values = parse_overrides([
        "sigma2=0.0625", "n_runs=10", "mode=UL", "optimize_spread=false",
        "gamma_grid=[0.5, 1.0]", 'filter="ukf"',
    ])
    assert values == {
        "sigma2": 0.0625,
        "n_runs": 10,
        "mode": "UL",
        "optimize_spread": False,
        "gamma_grid": [0.5, 1.0],
        "filter": "ukf",
    }


def test_parse_overrides_invalid():
    from pybeamtrack.io import parse_overrides
    from pybeamtrack.exceptions import ConfigurationError

    with pytest.raises(ConfigurationError):
        parse_overrides(["sigma2"])

    with pytest.raises(ConfigurationError):
        parse_overrides(["=1"])


def test_parse_config_defaults():
    from pybeamtrack.io import parse_config

    config = parse_config()
    assert config.mode == "DL"
    assert config.n_bs == 16
    assert config.n_ue == 8
    assert config.rho == 0.99
    assert config.n_slots == 20
    assert config.snr_db == 20


def test_parse_config_empty_file(tmp_path):
    from pybeamtrack.io import parse_config
    from pybeamtrack.scenario import ScenarioConfig

    path = tmp_path / "empty.toml"
    path.write_text("")
    assert parse_config(path) == ScenarioConfig.for_mode("DL")


def test_parse_config_file(tmp_path):
    from pybeamtrack.io import parse_config

    path = tmp_path / "ul.toml"
    path.write_text('mode = "UL"\nn_runs = 50\n\n[scenario]\npath_loss = [1.0, 2.0, 1.0, 0.5]\n')

    config = parse_config(path, ["sigma2=0.0625"])
    assert config.mode == "UL"
    assert config.k_users == 4
    assert config.snr_db == 0
    assert config.n_runs == 50
    assert config.path_loss == (1.0, 2.0, 1.0, 0.5)
    assert config.sigma2 == 0.25**2


def test_parse_config_errors(tmp_path):
    from pybeamtrack.io import parse_config
    from pybeamtrack.exceptions import ConfigurationError

    with pytest.raises(ConfigurationError, match="speed"):
        parse_config(overrides=["speed=3"])

    with pytest.raises(ConfigurationError, match="n_slots"):
        parse_config(overrides=["n_slots=-1"])

    path = tmp_path / "broken.toml"
    path.write_text("n_runs = = 3\n")
    with pytest.raises(ConfigurationError, match="broken.toml"):
        parse_config(path)

    path = tmp_path / "unknown.toml"
    path.write_text("n_runs = 3\nspeed = 4\n")
    with pytest.raises(ConfigurationError, match="speed"):
        parse_config(path)

    with pytest.raises(ConfigurationError, match="does not exist"):
        parse_config(tmp_path / "missing.toml")


def test_dump_config_roundtrip(tmp_path):
    from pybeamtrack.io import dump_config, parse_config
    from pybeamtrack.scenario import ScenarioConfig

    config = ScenarioConfig.for_mode(
        "UL", k_users=2, path_loss=[1.0, 0.25], sigma2=0.1, optimize_spread=False, seed=17,
    )
    path = tmp_path / "dump.toml"
    path.write_text(dump_config(config))

    text = path.read_text()
    assert 'mode = "UL"' in text
    assert "optimize_spread = false" in text
    assert "path_loss = [1.0, 0.25]" in text
    assert parse_config(path) == config
