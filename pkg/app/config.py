from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Optional, Tuple
from fractions import Fraction
from functools import lru_cache


class Settings(BaseSettings):

    APP_NAME: str = "lg-duality-engine"
    VERSION: str = "1.0.0"

    # Algebra
    MONOMIAL_ORDER: str = "degrevlex"
    TRACE_BACKEND: str = "residue"
    HOM_BACKEND: str = "auto"
    VOLUME_SCALE: str = "1"

    # Truncation (None = choose from deg W)
    TRUNCATION: Optional[int] = None

    # Spectral sequences
    SPECTRAL_WINDOW: str = "-2:3"
    SPECTRAL_R_MAX: int = 10

    # Boundary traces use the d!-term antisymmetrized product
    MAX_TRACE_DIMENSION: int = 3

    # Output
    REPORT_FORMAT: str = "json"
    LOG_LEVEL: str = "WARNING"

    # Self-test battery
    SELFTEST_SEED: int = 20240601
    SELFTEST_RANDOM_INSTANCES: int = 100

    model_config = SettingsConfigDict(case_sensitive=True)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls,
        init_settings,
        env_settings,
        dotenv_settings,
        file_secret_settings,
    ):
        # Only explicit arguments count: no environment, no .env file
        return (init_settings,)

    @field_validator("MONOMIAL_ORDER")
    @classmethod
    def _check_order(cls, value: str) -> str:
        if value not in ("degrevlex", "lex", "grlex"):
            raise ValueError(f"unknown monomial order '{value}'")
        return value

    @field_validator("TRACE_BACKEND")
    @classmethod
    def _check_trace_backend(cls, value: str) -> str:
        if value not in ("residue", "socle"):
            raise ValueError(f"unknown trace backend '{value}'")
        return value

    @field_validator("HOM_BACKEND")
    @classmethod
    def _check_hom_backend(cls, value: str) -> str:
        if value not in ("auto", "snf", "truncate"):
            raise ValueError(f"unknown hom backend '{value}'")
        return value

    @field_validator("VOLUME_SCALE")
    @classmethod
    def _check_scale(cls, value: str) -> str:
        scale = Fraction(value)
        if scale == 0:
            raise ValueError("volume scale must be nonzero")
        return str(scale)

    @field_validator("SPECTRAL_WINDOW")
    @classmethod
    def _check_window(cls, value: str) -> str:
        lo, _, hi = value.partition(":")
        if int(lo) > int(hi):
            raise ValueError(f"empty spectral window '{value}'")
        return f"{int(lo)}:{int(hi)}"

    @field_validator("REPORT_FORMAT")
    @classmethod
    def _check_format(cls, value: str) -> str:
        if value not in ("json", "csv"):
            raise ValueError(f"unknown report format '{value}'")
        return value

    @property
    def volume_scale(self) -> Fraction:
        return Fraction(self.VOLUME_SCALE)

    @property
    def spectral_window(self) -> Tuple[int, int]:
        lo, _, hi = self.SPECTRAL_WINDOW.partition(":")
        return int(lo), int(hi)


@lru_cache()
def get_settings() -> Settings:
    return Settings()

settings = get_settings()
