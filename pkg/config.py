import json
from functools import lru_cache
from pathlib import Path
from typing import Any, List, Optional, Tuple, Type

from pydantic import field_validator, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict
from sympy import perfect_power, isprime

KNOWN_CHECKS = ("golden", "weyl", "tits", "orders", "lifts", "decide", "complements", "obstructions")
KNOWN_MODES = ("sc", "adjoint")


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    if isprime(q):
        return True
    pp = perfect_power(q)
    return bool(pp) and isprime(pp[0])


class Settings(BaseSettings):
    # --- Scenario selection ---
    Q_VALUES: List[int] = [2, 3, 4, 5]
    CLASSES: List[int] = list(range(1, 26))
    MODES: List[str] = ["sc", "adjoint"]
    CHECKS: List[str] = list(KNOWN_CHECKS)
    ORDER_CHECK_Q: List[int] = [2, 3, 4, 5, 7, 8, 9, 13]

    # --- Resource caps ---
    MAX_FIELD_SIZE: int = 2**32
    MAX_ENUMERATION: int = 10**7
    MAX_COSETS: int = 200_000
    MAX_SYSTEM_ROWS: int = 6000
    MAX_MEMORY_MB: int = 4096

    # --- Runner ---
    WORKERS: int = 4
    OUTPUT_PATH: Optional[Path] = None
    INCLUDE_TIMINGS: bool = False
    LOG_LEVEL: str = "INFO"

    @field_validator("Q_VALUES", "ORDER_CHECK_Q")
    @classmethod
    def _check_prime_powers(cls, v: List[int]) -> List[int]:
        bad = [q for q in v if not is_prime_power(q)]
        if bad:
            raise ValueError(f"Not prime powers: {bad}")
        return v

    @field_validator("CLASSES")
    @classmethod
    def _check_classes(cls, v: List[int]) -> List[int]:
        bad = [c for c in v if not 1 <= c <= 25]
        if bad:
            raise ValueError(f"Class indices must lie in 1..25, got {bad}")
        return v

    @field_validator("WORKERS")
    @classmethod
    def _check_workers(cls, v: int) -> int:
        if v < 1:
            raise ValueError("WORKERS must be positive")
        return v

    @model_validator(mode="after")
    def _check_modes_and_checks(self) -> "Settings":
        if not self.MODES:
            raise ValueError("At least one mode is required")
        unknown_modes = [m for m in self.MODES if m not in KNOWN_MODES]
        if unknown_modes:
            raise ValueError(f"Unknown modes: {unknown_modes}")
        unknown_checks = [c for c in self.CHECKS if c not in KNOWN_CHECKS]
        if unknown_checks:
            raise ValueError(f"Unknown checks: {unknown_checks}")
        return self

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # Only the config file and explicit flags count, the environment is ignored
        return (init_settings,)

    @classmethod
    def from_file(cls, path: Optional[Path], **overrides: Any) -> "Settings":
        data: dict = {}
        if path is not None:
            path = Path(path)
            if not path.is_file():
                raise FileNotFoundError(f"Config file not found: {path}.")
            try:
                with open(path, "r", encoding="utf-8") as f:
                    data = json.load(f)
            except json.JSONDecodeError as e:
                raise ValueError(f"Error decoding JSON from {path}: {e}") from e
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)

    model_config = SettingsConfigDict(extra="ignore")


@lru_cache()
def get_settings() -> Settings:
    return Settings()
