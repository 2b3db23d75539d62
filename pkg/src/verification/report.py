"""
Run configuration and check outcomes for the verification suites
"""
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from src.config import settings


class CheckSkipped(Exception):
    """Raised inside a check that does not apply to the configuration"""


class RunConfig(BaseModel):
    """Configuration shared by every suite of one run"""
    modulus: int = Field(default_factory=lambda: settings.MODULUS)
    indices: int = Field(default_factory=lambda: settings.INDICES)
    tolerance: float = Field(default_factory=lambda: settings.TOLERANCE)
    budget: int = Field(default_factory=lambda: settings.ENUMERATION_BUDGET)
    seed: int = Field(default_factory=lambda: settings.SEED)
    random_pairs: int = Field(default_factory=lambda: settings.RANDOM_PAIRS)

    @field_validator("modulus")
    @classmethod
    def modulus_is_odd(cls, v: int) -> int:
        if v < 3 or v % 2 == 0:
            raise ValueError(f"modulus must be odd and at least 3, got {v}")
        return v

    @field_validator("indices")
    @classmethod
    def indices_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"index set must contain at least one index, got {v}")
        return v

    @field_validator("tolerance")
    @classmethod
    def tolerance_in_range(cls, v: float) -> float:
        if not 0 < v < 1e-3:
            raise ValueError(f"tolerance must lie in (0, 1e-3), got {v}")
        return v

    @field_validator("budget", "random_pairs")
    @classmethod
    def positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"must be positive, got {v}")
        return v

    @property
    def symbols(self) -> int:
        return self.modulus - 1


@dataclass
class Measurement:
    """What a single check observed"""

    ok: bool
    measured: Any = None
    expected: Any = None
    tolerance: Optional[float] = None
    detail: Optional[str] = None

    @classmethod
    def equal(cls, measured: Any, expected: Any, detail: Optional[str] = None) -> "Measurement":
        return cls(measured == expected, measured, expected, detail=detail)

    @classmethod
    def within(cls, error: float, tolerance: float, detail: Optional[str] = None) -> "Measurement":
        return cls(bool(error < tolerance), float(error), 0.0, tolerance, detail)


def exhaustive(cases: Iterable[Tuple], predicate: Callable[..., bool]) -> Measurement:
    """Counterexample count of predicate over cases, expected 0"""
    checked = 0
    failures = 0
    first = None
    for case in cases:
        checked += 1
        if not predicate(*case):
            failures += 1
            if first is None:
                first = case
    detail = f"{checked} cases"
    if first is not None:
        detail += "; first counterexample " + ", ".join(str(x) for x in first)
    return Measurement(failures == 0, failures, 0, detail=detail)
