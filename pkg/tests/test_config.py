from radembed.core.config import Settings


def test_defaults():
    settings = Settings()
    assert settings.SCHEMA_VERSION == "1.0"
    assert settings.GRID_NODES == 4096
    assert settings.XI_GRID_POINTS >= 1000


def test_environment_override(monkeypatch):
    monkeypatch.setenv("RADEMBED_GRID_NODES", "128")
    monkeypatch.setenv("RADEMBED_DEFAULT_SEED", "7")
    settings = Settings()
    assert settings.GRID_NODES == 128
    assert settings.DEFAULT_SEED == 7


def test_dotenv_file(tmp_path, monkeypatch):
    monkeypatch.delenv("RADEMBED_XI_GRID_POINTS", raising=False)
    monkeypatch.delenv("RADEMBED_LOG_LEVEL", raising=False)
    env_file = tmp_path / ".env"
    env_file.write_text("RADEMBED_XI_GRID_POINTS=2000\nRADEMBED_LOG_LEVEL=DEBUG\nUNRELATED=1\n")
    settings = Settings(_env_file=env_file)
    assert settings.XI_GRID_POINTS == 2000
    assert settings.LOG_LEVEL == "DEBUG"
