"""Tests for ballpark - Configuration management."""

import json
from unittest.mock import patch

import pytest


class TestSweepConfig:
    """Tests for SweepConfig dataclass."""

    def test_default_values(self):
        """Test SweepConfig has correct default values."""
        from ballpark import DeltaPolicy, SweepConfig

        config = SweepConfig()
        assert config.trials == 1000
        assert config.seed == 42
        assert (config.n_min, config.n_max) == (1, 4)
        assert config.m_extra_max == 3
        assert config.entry_range == (-2.0, 2.0)
        assert config.delta_policy is DeltaPolicy.MAX_ADMISSIBLE
        assert config.workers == 1

    def test_custom_values(self):
        """Test SweepConfig coerces lists and policy names."""
        from ballpark import DeltaPolicy, SweepConfig

        config = SweepConfig(
            trials=10,
            r_grid=[1, 2],
            entry_range=[-1, 1],
            delta_policy="fraction",
            delta_fraction=0.25,
        )
        assert config.r_grid == (1.0, 2.0)
        assert config.entry_range == (-1.0, 1.0)
        assert config.delta_policy is DeltaPolicy.FRACTION

    @pytest.mark.parametrize("kwargs", [
        {"trials": -1},
        {"seed": -5},
        {"n_min": 0},
        {"n_min": 3, "n_max": 2},
        {"entry_range": (1.0, 1.0)},
        {"r_grid": ()},
        {"r_grid": (1.0, 0.0)},
        {"delta_fraction": 0.0},
        {"delta_fraction": 1.5},
        {"output_format": "xml"},
        {"workers": 0},
    ])
    def test_rejects_bad_values(self, kwargs):
        """Test invalid sweep parameters raise DomainError."""
        from ballpark import DomainError, SweepConfig

        with pytest.raises(DomainError):
            SweepConfig(**kwargs)

    def test_delta_for(self):
        """Test delta = 1/|A| or f/|A| depending on the policy."""
        from ballpark import SweepConfig

        assert SweepConfig().delta_for(4.0) == 0.25
        assert SweepConfig(delta_policy="fraction", delta_fraction=0.5).delta_for(4.0) == 0.125


class TestSettings:
    """Tests for Settings dataclass."""

    def test_default_values(self):
        """Test Settings has correct default values."""
        from ballpark import Settings, SweepConfig

        settings = Settings()
        assert settings.version == "1.0"
        assert settings.rank_tol == 1e-10
        assert settings.boundary_tol_rel == 1e-9
        assert settings.count_ceiling == 1e8
        assert settings.output_format == "csv"
        assert isinstance(settings.sweep, SweepConfig)

    def test_boundary_tol(self):
        """Test the boundary band scales with the radius."""
        from ballpark import Settings

        assert Settings().boundary_tol(4.0) == pytest.approx(4e-9)

    def test_dict_round_trip(self):
        """Test to_dict output is plain JSON and from_dict rebuilds it."""
        from ballpark import Settings

        settings = Settings(rank_tol=1e-12)
        settings.sweep.trials = 7
        data = json.loads(json.dumps(settings.to_dict()))
        assert data["sweep"]["delta_policy"] == "max_admissible"
        assert Settings.from_dict(data) == settings


class TestGetConfig:
    """Tests for get_config function."""

    def test_get_config_missing_file(self, tmp_path):
        """Test get_config returns defaults when no file exists."""
        with patch("ballpark.knobs.get_config_path") as mock_path:
            mock_path.return_value = tmp_path / "config.json"

            from ballpark import get_config

            settings = get_config(environ={})
            assert settings.version == "1.0"
            assert settings.sweep.trials == 1000

    def test_get_config_existing_file(self, tmp_path):
        """Test get_config loads from existing file."""
        config_file = tmp_path / "config.json"
        config_data = {
            "version": "1.0",
            "rank_tol": 1e-12,
            "output_format": "structured",
            "sweep": {
                "trials": 50,
                "seed": 9,
                "r_grid": [1.0, 2.0],
            },
        }
        config_file.write_text(json.dumps(config_data))

        with patch("ballpark.knobs.get_config_path") as mock_path:
            mock_path.return_value = config_file

            from ballpark import get_config

            settings = get_config(environ={})
            assert settings.rank_tol == 1e-12
            assert settings.output_format == "structured"
            assert settings.sweep.trials == 50
            assert settings.sweep.seed == 9
            assert settings.sweep.r_grid == (1.0, 2.0)
            assert settings.sweep.n_max == 4

    def test_get_config_explicit_path(self, tmp_path):
        """Test an explicit path wins over the data directory."""
        from ballpark import get_config

        config_file = tmp_path / "elsewhere.json"
        config_file.write_text(json.dumps({"slack_rel": 1e-6}))
        assert get_config(config_file, environ={}).slack_rel == 1e-6

    def test_get_config_corrupt_file(self, tmp_path, caplog):
        """Test get_config falls back to defaults on unreadable JSON."""
        config_file = tmp_path / "config.json"
        config_file.write_text("{ not json")

        from ballpark import get_config

        settings = get_config(config_file, environ={})
        assert settings.rank_tol == 1e-10
        assert "unreadable" in caplog.text

    @pytest.mark.parametrize("document", [
        {"rank_tol": -1.0},
        {"output_format": "xml"},
        {"surprise": True},
        {"sweep": {"trials": "many"}},
        {"sweep": {"n_min": 3, "n_max": 2}},
    ])
    def test_get_config_schema_error(self, tmp_path, document):
        """Test a readable file that violates the schema raises SchemaError."""
        from ballpark import SchemaError, get_config

        config_file = tmp_path / "config.json"
        config_file.write_text(json.dumps(document))
        with pytest.raises(SchemaError):
            get_config(config_file, environ={})


class TestEnvOverrides:
    """Tests for BALLPARK_* environment overrides."""

    def test_top_level_override(self, tmp_path):
        """Test BALLPARK_RANK_TOL replaces rank_tol."""
        from ballpark import get_config

        settings = get_config(tmp_path / "config.json", environ={"BALLPARK_RANK_TOL": "1e-12"})
        assert settings.rank_tol == 1e-12

    def test_nested_override(self, tmp_path):
        """Test a double underscore reaches the sweep block."""
        from ballpark import get_config

        environ = {"BALLPARK_SWEEP__TRIALS": "25", "BALLPARK_SWEEP__R_GRID": "0.5, 1.5"}
        settings = get_config(tmp_path / "config.json", environ=environ)
        assert settings.sweep.trials == 25
        assert settings.sweep.r_grid == (0.5, 1.5)

    def test_override_beats_file(self, tmp_path):
        """Test environment values are applied after the file."""
        from ballpark import get_config

        config_file = tmp_path / "config.json"
        config_file.write_text(json.dumps({"sweep": {"seed": 1}}))
        settings = get_config(config_file, environ={"BALLPARK_SWEEP__SEED": "2"})
        assert settings.sweep.seed == 2

    def test_unknown_names_ignored(self, tmp_path):
        """Test unrelated BALLPARK_* variables are skipped."""
        from ballpark import get_config

        environ = {"BALLPARK_HOME": str(tmp_path), "BALLPARK_NOPE__X": "1", "OTHER": "2"}
        assert get_config(tmp_path / "config.json", environ=environ).sweep.trials == 1000

    def test_bad_value(self, tmp_path):
        """Test an unconvertible value raises SchemaError."""
        from ballpark import SchemaError, get_config

        with pytest.raises(SchemaError):
            get_config(tmp_path / "config.json", environ={"BALLPARK_SWEEP__TRIALS": "lots"})

    def test_out_of_range_value(self, tmp_path):
        """Test an override is validated like the file."""
        from ballpark import SchemaError, get_config

        with pytest.raises(SchemaError):
            get_config(tmp_path / "config.json", environ={"BALLPARK_SWEEP__WORKERS": "0"})


class TestSaveConfig:
    """Tests for save_config function."""

    def test_save_config(self, tmp_path):
        """Test save_config writes config to file."""
        config_file = tmp_path / "config.json"

        with patch("ballpark.knobs.get_config_path") as mock_path:
            with patch("ballpark.knobs.ensure_data_dir"):
                mock_path.return_value = config_file

                from ballpark import Settings, save_config

                settings = Settings(output_format="structured")
                assert save_config(settings) == config_file

                assert config_file.exists()
                with open(config_file) as f:
                    saved = json.load(f)
                assert saved["output_format"] == "structured"
                assert saved["sweep"]["r_grid"] == [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0]

    def test_round_trip(self, tmp_path):
        """Test saved settings load back unchanged."""
        from ballpark import DeltaPolicy, Settings, get_config, save_config

        settings = Settings(slack_rel=1e-7)
        settings.sweep.delta_policy = DeltaPolicy.FRACTION
        settings.sweep.delta_fraction = 0.5
        path = save_config(settings, tmp_path / "nested" / "config.json")
        loaded = get_config(path, environ={})
        assert loaded.slack_rel == 1e-7
        assert loaded.sweep.delta_fraction == 0.5
        assert loaded.sweep.delta_policy.value == "fraction"


class TestDataDir:
    """Tests for hideaway paths."""

    def test_home_override(self, tmp_path, monkeypatch):
        """Test BALLPARK_HOME relocates the data directory."""
        from ballpark import hideaway

        monkeypatch.setenv("BALLPARK_HOME", str(tmp_path / "data"))
        assert hideaway.get_config_path() == tmp_path / "data" / "config.json"
        assert hideaway.ensure_data_dir().is_dir()

    def test_default_location(self, tmp_path, monkeypatch):
        """Test the default directory is ~/.ballpark."""
        from ballpark import hideaway

        monkeypatch.delenv("BALLPARK_HOME", raising=False)
        monkeypatch.setattr("pathlib.Path.home", lambda: tmp_path)
        assert hideaway.get_data_dir() == tmp_path / ".ballpark"
