"""
Modular arithmetic over Z_{2k+1} and its unit group as permutations.

Residues are stored as least nonnegative representatives. The nonzero
residue a is identified with the symbol a - 1, so the unit group acts on
the symbols {0, ..., 2k - 1}; the same indexing is used for matrix rows
and columns in the representation layer.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Union

from src.algebra.perm import Perm
from src.errors import PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Modulus:
    """The ring size n = 2k + 1 (odd, at least 3)"""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise TypeError(f"modulus must be an integer, got {self.n!r}")
        if self.n < 3 or self.n % 2 == 0:
            raise ValueError(f"modulus must be odd and at least 3, got {self.n}")

    @property
    def k(self) -> int:
        return (self.n - 1) // 2

    @property
    def symbols(self) -> int:
        """Number of nonzero residues, 2k"""
        return self.n - 1

    def residue(self, value: int) -> Residue:
        return Residue(value % self.n, self)

    def __int__(self) -> int:
        return self.n


@dataclass(frozen=True, slots=True)
class Residue:
    """An element of Z_n in canonical form"""

    value: int
    modulus: Modulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.n:
            raise ValueError(
                f"residue {self.value} is not canonical modulo {self.modulus.n}"
            )

    @property
    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus.n) == 1

    def __mul__(self, other: Union[Residue, int]) -> Residue:
        value = other.value if isinstance(other, Residue) else other
        return self.modulus.residue(self.value * value)

    __rmul__ = __mul__

    def __neg__(self) -> Residue:
        return self.modulus.residue(-self.value)

    def __int__(self) -> int:
        return self.value


def as_modulus(n: Union[Modulus, int]) -> Modulus:
    return n if isinstance(n, Modulus) else Modulus(n)


def is_prime(n: int) -> bool:
    """Trial-division primality test"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    divisor = 3
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 2
    return True


def units(n: Union[Modulus, int]) -> List[Residue]:
    """Residues coprime to n, ascending"""
    modulus = as_modulus(n)
    return [
        Residue(value, modulus)
        for value in range(1, modulus.n)
        if math.gcd(value, modulus.n) == 1
    ]


def totient(n: Union[Modulus, int]) -> int:
    return len(units(n))


def mult_perm(u: Union[Residue, int], n: Union[Modulus, int]) -> Perm:
    """Multiplication by the unit u as a permutation of the 2k symbols.

    Symbol a - 1 maps to (u * a mod n) - 1.
    """
    modulus = as_modulus(n)
    value = u.value if isinstance(u, Residue) else u % modulus.n
    if math.gcd(value, modulus.n) != 1:
        raise PreconditionError(f"{value} is not a unit modulo {modulus.n}")
    return Perm(tuple((value * a) % modulus.n - 1 for a in range(1, modulus.n)))


def aut_group_perms(n: Union[Modulus, int]) -> List[Perm]:
    """Aut(Z_n) as permutations of the nonzero residues, one per unit"""
    modulus = as_modulus(n)
    perms = [mult_perm(u, modulus) for u in units(modulus)]
    logger.debug(f"Aut(Z_{modulus.n}) realized as {len(perms)} permutations")
    return perms
