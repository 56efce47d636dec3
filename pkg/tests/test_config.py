import json

import pytest
from pydantic import ValidationError

from config import Settings, is_prime_power


def test_defaults():
    settings = Settings()
    assert settings.CLASSES == list(range(1, 26))
    assert settings.MODES == ["sc", "adjoint"]
    assert settings.MAX_FIELD_SIZE == 2**32


@pytest.mark.parametrize("q, expected", [(2, True), (9, True), (16, True), (125, True), (1, False), (6, False), (12, False)])
def test_is_prime_power(q, expected):
    assert is_prime_power(q) is expected


@pytest.mark.parametrize("overrides", [
    {"Q_VALUES": [6]},
    {"ORDER_CHECK_Q": [10]},
    {"CLASSES": [0]},
    {"CLASSES": [26]},
    {"WORKERS": 0},
    {"MODES": []},
    {"MODES": ["projective"]},
    {"CHECKS": ["everything"]},
])
def test_invalid_settings(overrides):
    with pytest.raises(ValidationError):
        Settings(**overrides)


def test_environment_is_ignored(monkeypatch):
    monkeypatch.setenv("WORKERS", "17")
    monkeypatch.setenv("Q_VALUES", "[7]")
    settings = Settings()
    assert settings.WORKERS == 4
    assert settings.Q_VALUES == [2, 3, 4, 5]


def test_from_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"Q_VALUES": [3, 5], "CLASSES": [14], "UNKNOWN": 1}), encoding="utf-8")
    settings = Settings.from_file(path, WORKERS=2, CLASSES=None)
    assert settings.Q_VALUES == [3, 5]
    assert settings.CLASSES == [14]
    assert settings.WORKERS == 2


def test_from_file_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        Settings.from_file(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValueError):
        Settings.from_file(broken)
