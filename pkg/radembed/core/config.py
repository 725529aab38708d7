from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    PROJECT_NAME: str = "radembed"
    SCHEMA_VERSION: str = "1.0"

    # Exponent arithmetic
    COMPARISON_TOL: float = 1e-12
    BETA_GRID_DENOMINATOR: int = 16
    CHECK_NESTEDNESS: bool = False

    # Inequality reports
    REPORT_TOL: float = 1e-9

    # Radial quadrature
    GRID_NODES: int = 4096
    GRID_R_MIN: float = 1e-6
    GRID_R_MAX: float = 1e3

    # Brute-force xi search
    XI_GRID_POINTS: int = 10000
    XI_MARGIN: float = 1e-6

    DEFAULT_SEED: int = 42
    LOG_LEVEL: str = "INFO"

    model_config = SettingsConfigDict(env_file=".env", env_prefix="RADEMBED_", extra="ignore")


settings = Settings()
