"""
Configuration management using Pydantic Settings
"""
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    # Application Configuration
    APP_NAME: str = Field(default="critical-mcl")
    LOG_LEVEL: str = Field(default="WARNING")
    LOG_FORMAT: str = Field(default="text")

    # Default lattice configuration
    MODULUS: int = Field(default=5)
    INDICES: int = Field(default=2)
    SEED: int = Field(default=0)
    RANDOM_PAIRS: int = Field(default=100)

    # Numerical tolerances
    TOLERANCE: float = Field(default=1e-9)
    EXACT_TOLERANCE: float = Field(default=1e-12)
    MEET_EIGEN_TOLERANCE: float = Field(default=1e-6)

    # Budgets
    ENUMERATION_BUDGET: int = Field(default=10**6)
    GROUP_BUDGET: int = Field(default=10**5)
    BRUTE_FORCE_MAX_SYMBOLS: int = Field(default=9)
    MAX_MATRIX_DIM: int = Field(default=32)
    SPAN_BASIS_BUDGET: int = Field(default=10**5)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="MCL_",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()
