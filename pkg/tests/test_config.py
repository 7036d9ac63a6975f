import pytest

from utils.config import apply_overrides, default_config, load_config


def test_defaults_have_every_section(config):
    for section in ("system", "numerics", "quadrature", "transform", "oracle", "export", "defaults",
                    "validate", "parallel"):
        assert section in config


def test_overrides_merge_key_by_key(config):
    merged = apply_overrides(config, {"defaults": {"ALPHA": 0.7}, "extra": {"X": 1}})
    assert merged["defaults"]["ALPHA"] == 0.7
    assert merged["defaults"]["BETA"] == config["defaults"]["BETA"]
    assert merged["extra"] == {"X": 1}
    assert config["defaults"]["ALPHA"] == 2.5


def test_none_keeps_default(config):
    assert apply_overrides(config, {"export": {"FORMAT": None}})["export"]["FORMAT"] == "csv"


def test_settings_file(tmp_path):
    path = tmp_path / "my_settings.py"
    path.write_text('SETTINGS = {"oracle": {"STEP": 0.002}}\n', encoding="utf-8")
    cfg = load_config(str(path))
    assert cfg["oracle"]["STEP"] == 0.002
    assert cfg["oracle"]["METHOD"] == default_config()["oracle"]["METHOD"]


def test_malformed_settings_exit_with_usage_code(tmp_path):
    path = tmp_path / "broken.py"
    path.write_text("SETTINGS = [1, 2]\n", encoding="utf-8")
    with pytest.raises(SystemExit) as exc:
        load_config(str(path))
    assert exc.value.code == 2
