"""Tests for SolverConfig."""

import pytest

from warpscatter.core.config import SolverConfig, get_config, set_config

ENV = ("WARPSCATTER_THREADS", "WARPSCATTER_RTOL", "WARPSCATTER_ATOL", "WARPSCATTER_RMAX")


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    for name in ENV:
        monkeypatch.setenv(name, "unset")
        monkeypatch.delenv(name)
    env_file = tmp_path / ".env"
    env_file.write_text("")
    return env_file


class TestFromEnv:
    def test_defaults(self, clean_env):
        assert SolverConfig.from_env(clean_env) == SolverConfig()

    def test_overrides(self, clean_env, monkeypatch):
        monkeypatch.setenv("WARPSCATTER_THREADS", "4")
        monkeypatch.setenv("WARPSCATTER_RMAX", "80")
        config = SolverConfig.from_env(clean_env)
        assert config.threads == 4
        assert config.r_max == 80.0
        assert config.rtol == SolverConfig().rtol

    def test_env_file(self, clean_env, monkeypatch):
        clean_env.write_text("WARPSCATTER_RTOL=1e-8\n")
        config = SolverConfig.from_env(clean_env)
        assert config.rtol == 1e-8

    def test_every_invalid_name_is_listed(self, clean_env, monkeypatch):
        monkeypatch.setenv("WARPSCATTER_THREADS", "0")
        monkeypatch.setenv("WARPSCATTER_ATOL", "tiny")
        monkeypatch.setenv("WARPSCATTER_RMAX", "-5")
        with pytest.raises(ValueError, match="Invalid environment variables") as info:
            SolverConfig.from_env(clean_env)
        message = str(info.value)
        assert "WARPSCATTER_THREADS" in message
        assert "WARPSCATTER_ATOL" in message
        assert "WARPSCATTER_RMAX" in message
        assert "WARPSCATTER_RTOL" not in message


class TestProcessConfig:
    def test_set_and_get(self):
        config = SolverConfig(threads=3)
        set_config(config)
        assert get_config() is config

    def test_with_overrides_ignores_none(self):
        config = SolverConfig().with_overrides(cfl=0.5, r_max=None)
        assert config.cfl == 0.5
        assert config.r_max == SolverConfig().r_max

    def test_frozen(self):
        with pytest.raises(AttributeError):
            SolverConfig().rtol = 1.0
