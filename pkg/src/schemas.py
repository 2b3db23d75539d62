"""
Wire models for the JSON written by the command line
"""
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from src.algebra.groups import WreathElement
from src.algebra.lattice import X, MclElement
from src.algebra.perm import Perm

Entry = Union[int, Literal["X"]]


def clean_float(value: float) -> float:
    """Normalize negative zero so repeated runs serialize identically"""
    value = float(value)
    return 0.0 if value == 0 else value


class ElementPayload(BaseModel):
    """A lattice element"""
    modulus: int
    entries: List[Entry]
    bottom: Optional[bool] = Field(default=None, description="Present and true only for the bottom")

    @classmethod
    def from_element(cls, m: MclElement) -> "ElementPayload":
        return cls(
            modulus=m.modulus.n,
            entries=["X" if v == X else v for v in m.entries],
            bottom=True if m.is_bottom else None,
        )

    def to_element(self) -> MclElement:
        if self.bottom:
            return MclElement.bottom(self.modulus, len(self.entries))
        return MclElement.of(self.modulus, self.entries)


class PermPayload(BaseModel):
    """Image array of a permutation"""
    images: List[int]

    @classmethod
    def from_perm(cls, p: Perm) -> "PermPayload":
        return cls(images=p.to_list())


class WreathPayload(BaseModel):
    base: List[List[int]]
    top: List[int]

    @classmethod
    def from_wreath(cls, w: WreathElement) -> "WreathPayload":
        return cls(base=[b.to_list() for b in w.base], top=w.top.to_list())

    def to_wreath(self) -> WreathElement:
        return WreathElement(tuple(Perm(tuple(b)) for b in self.base), Perm(tuple(self.top)))


class MatrixPayload(BaseModel):
    """Dense complex matrix with [re, im] pairs"""
    name: Optional[str] = None
    rows: int
    cols: int
    data: List[List[Tuple[float, float]]]

    @classmethod
    def from_array(cls, m: np.ndarray, name: Optional[str] = None) -> "MatrixPayload":
        rows, cols = m.shape
        data = [
            [(clean_float(z.real), clean_float(z.imag)) for z in row]
            for row in np.asarray(m, dtype=np.complex128)
        ]
        return cls(name=name, rows=rows, cols=cols, data=data)

    def to_array(self) -> np.ndarray:
        return np.array(
            [[complex(re, im) for re, im in row] for row in self.data], dtype=np.complex128
        )


Status = Literal["pass", "fail", "skipped"]


class CheckResult(BaseModel):
    """One named check of a verification suite"""
    suite: str
    name: str
    status: Status
    measured: Optional[Union[bool, int, float, str, List[int]]] = None
    expected: Optional[Union[bool, int, float, str, List[int]]] = None
    tolerance: Optional[float] = None
    detail: Optional[str] = None


class VerificationReport(BaseModel):
    """Checks of one suite run; passes iff no non-skipped check failed"""
    suite: str
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.status == "pass")

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c.status == "fail")

    @property
    def skipped(self) -> int:
        return sum(1 for c in self.checks if c.status == "skipped")

    @property
    def status(self) -> Status:
        return "fail" if self.failed else "pass"

    def summary(self) -> dict:
        return {
            "suite": self.suite,
            "status": self.status,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
        }


class OpsTable(BaseModel):
    """Meet and join tables indexed into elements, bottom last"""
    elements: List[ElementPayload]
    meet: List[List[int]]
    join: List[List[int]]
