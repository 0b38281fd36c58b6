import os
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from latentsym import config
from latentsym.settings import LatentSymSettings, get_run_settings


def test_defaults():
    with patch.dict(os.environ, {}, clear=True):
        settings = LatentSymSettings(_env_file=None)
    assert settings.max_concurrency == config.DEFAULT_MAX_CONCURRENCY
    assert settings.log_level == config.DEFAULT_LOG_LEVEL
    assert settings.tol == config.DEFAULT_TOL


def test_environment_overrides():
    env = {"LATENTSYM_MAX_CONCURRENCY": "3", "LATENTSYM_TOL": "1e-8"}
    with patch.dict(os.environ, env):
        settings = LatentSymSettings(_env_file=None)
    assert settings.max_concurrency == 3
    assert settings.tol == 1e-8


def test_invalid_concurrency():
    with patch.dict(os.environ, {"LATENTSYM_MAX_CONCURRENCY": "0"}):
        with pytest.raises(ValidationError):
            LatentSymSettings(_env_file=None)


def test_env_file(tmp_path):
    env_file = tmp_path / ".env"
    env_file.write_text("LATENTSYM_LOG_LEVEL=DEBUG\n")
    with patch.dict(os.environ, {}, clear=True):
        settings = LatentSymSettings(_env_file=env_file)
    assert settings.log_level == "DEBUG"


def test_get_run_settings():
    assert set(get_run_settings()) == {
        "max_concurrency",
        "log_level",
        "tol",
        "condition_cap",
    }
