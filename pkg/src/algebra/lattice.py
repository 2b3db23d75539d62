"""
The critical multi-cubic lattice M over Z_{2k+1} on a finite index set.

Elements are kept in canonical form: one entry per index, either the
indeterminate X (stored as 0, the zero of the pre-quotient multi-cube) or a
nonzero residue 1..2k. Signed values -j are the residues 2k + 1 - j. An
explicit bottom element is adjoined so that meet is total.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import reduce
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from src.algebra.ring import Modulus, Residue, as_modulus
from src.config import settings
from src.errors import PreconditionError, ShapeMismatchError, check_budget

logger = logging.getLogger(__name__)

X = 0

EntryLike = Union[int, str, None]


def _parse_entry(entry: EntryLike) -> int:
    if entry is None or entry == "X":
        return X
    if isinstance(entry, bool) or not isinstance(entry, int):
        raise ValueError(f"entry must be 'X' or an integer, got {entry!r}")
    return entry


@dataclass(frozen=True, slots=True)
class MclElement:
    """A point of M, or the adjoined bottom"""

    modulus: Modulus
    entries: Tuple[int, ...]
    is_bottom: bool = False

    def __post_init__(self):
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) < 1:
            raise ValueError("index set must contain at least one index")
        n = self.modulus.n
        for value in self.entries:
            if not 0 <= value < n:
                raise ValueError(f"entry {value} is neither X nor a residue in 1..{n - 1}")
        if self.is_bottom and any(self.entries):
            object.__setattr__(self, "entries", (X,) * len(self.entries))

    @classmethod
    def of(cls, modulus: Union[Modulus, int], entries: Sequence[EntryLike]) -> MclElement:
        """Build from a sequence of 'X'/None and residues"""
        return cls(as_modulus(modulus), tuple(_parse_entry(e) for e in entries))

    @classmethod
    def top(cls, modulus: Union[Modulus, int], indices: int) -> MclElement:
        return cls(as_modulus(modulus), (X,) * indices)

    @classmethod
    def bottom(cls, modulus: Union[Modulus, int], indices: int) -> MclElement:
        return cls(as_modulus(modulus), (X,) * indices, is_bottom=True)

    @property
    def indices(self) -> int:
        return len(self.entries)

    @property
    def sigma(self) -> FrozenSet[int]:
        """Indices carrying X"""
        return frozenset(i for i, v in enumerate(self.entries) if v == X)

    @property
    def specified(self) -> FrozenSet[int]:
        return frozenset(i for i, v in enumerate(self.entries) if v != X)

    @property
    def gamma(self) -> Tuple[int, ...]:
        """Representative vector with 0 at the X positions"""
        return self.entries

    @property
    def is_top(self) -> bool:
        return not self.is_bottom and not any(self.entries)

    @property
    def is_atom(self) -> bool:
        return not self.is_bottom and all(self.entries)

    @property
    def is_coatom(self) -> bool:
        return not self.is_bottom and len(self.specified) == 1

    def __str__(self) -> str:
        if self.is_bottom:
            return "⊥"
        return "(" + ",".join("X" if v == X else str(v) for v in self.entries) + ")"


def _check_shapes(m: MclElement, n: MclElement):
    if m.modulus != n.modulus or m.indices != n.indices:
        raise ShapeMismatchError(
            f"elements over Z_{m.modulus.n}^{m.indices} and Z_{n.modulus.n}^{n.indices}"
        )


def _require_proper(*elements: MclElement):
    for element in elements:
        if element.is_bottom:
            raise PreconditionError("operation is undefined on the bottom element")


def leq(m: MclElement, n: MclElement) -> bool:
    """Partial order: n agrees with m wherever n is specified; bottom is below everything"""
    _check_shapes(m, n)
    if m.is_bottom:
        return True
    if n.is_bottom:
        return False
    for a, b in zip(m.entries, n.entries):
        if b != X and a != b:
            return False
    return True


def meet(m: MclElement, n: MclElement) -> MclElement:
    """Greatest lower bound, bottom when some index carries two different residues"""
    _check_shapes(m, n)
    if m.is_bottom or n.is_bottom:
        return MclElement.bottom(m.modulus, m.indices)
    entries = []
    for a, b in zip(m.entries, n.entries):
        if a == X:
            entries.append(b)
        elif b == X or a == b:
            entries.append(a)
        else:
            return MclElement.bottom(m.modulus, m.indices)
    return MclElement(m.modulus, tuple(entries))


def join(m: MclElement, n: MclElement) -> MclElement:
    """Least upper bound"""
    _check_shapes(m, n)
    if m.is_bottom:
        return n
    if n.is_bottom:
        return m
    # indices where the specified values differ are forced to X
    entries = tuple(a if a == b else X for a, b in zip(m.entries, n.entries))
    return MclElement(m.modulus, entries)


def compatible(m: MclElement, n: MclElement) -> bool:
    """True iff m and n have a common lower bound other than bottom"""
    return not meet(m, n).is_bottom


def join_all(elements: Iterable[MclElement]) -> MclElement:
    """Join of a non-empty family"""
    return reduce(join, elements)


def meet_all(elements: Iterable[MclElement]) -> MclElement:
    """Meet of a non-empty family"""
    return reduce(meet, elements)


def _enumeration_size(modulus: Modulus, indices: int, alphabet: int) -> int:
    if indices < 1:
        raise ValueError(f"index set must contain at least one index, got {indices}")
    return alphabet ** indices


def atoms(
    modulus: Union[Modulus, int], indices: int, budget: Optional[int] = None
) -> List[MclElement]:
    """All fully specified elements in lexicographic order"""
    modulus = as_modulus(modulus)
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    check_budget("atoms", _enumeration_size(modulus, indices, modulus.symbols), budget)
    values = range(1, modulus.n)
    return [MclElement(modulus, e) for e in itertools.product(values, repeat=indices)]


def coatoms(
    modulus: Union[Modulus, int], indices: int, budget: Optional[int] = None
) -> List[MclElement]:
    """Elements with exactly one specified entry, ordered by index then value"""
    modulus = as_modulus(modulus)
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    check_budget("coatoms", modulus.symbols * indices, budget)
    result = []
    for i in range(indices):
        for value in range(1, modulus.n):
            entries = [X] * indices
            entries[i] = value
            result.append(MclElement(modulus, tuple(entries)))
    return result


def elements(
    modulus: Union[Modulus, int], indices: int, budget: Optional[int] = None
) -> List[MclElement]:
    """Every non-bottom element, X sorting before the residues"""
    modulus = as_modulus(modulus)
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    check_budget("elements", _enumeration_size(modulus, indices, modulus.n), budget)
    return [
        MclElement(modulus, e)
        for e in itertools.product(range(modulus.n), repeat=indices)
    ]


def scalar_mul(u: Union[Residue, int], m: MclElement) -> MclElement:
    """Multiply every specified entry by the unit u"""
    _require_proper(m)
    n = m.modulus.n
    value = u.value if isinstance(u, Residue) else u % n
    if not Residue(value, m.modulus).is_unit:
        raise PreconditionError(f"{value} is not a unit modulo {n}")
    return MclElement(m.modulus, tuple((value * a) % n for a in m.entries))


def delta(b: MclElement, a: MclElement) -> MclElement:
    """Negate the entries of a that are free in b; requires a <= b"""
    _require_proper(a, b)
    if not leq(a, b):
        raise PreconditionError(f"delta requires {a} <= {b}")
    n = a.modulus.n
    entries = tuple(
        (n - x) % n if y == X else x for x, y in zip(a.entries, b.entries)
    )
    return MclElement(a.modulus, entries)


def implies(b: MclElement, a: MclElement) -> MclElement:
    """b -> a: keep a's value exactly where a is specified and b is X"""
    _check_shapes(a, b)
    _require_proper(a, b)
    entries = tuple(x if y == X else X for x, y in zip(a.entries, b.entries))
    return MclElement(a.modulus, entries)


def filter_implies(b: MclElement, a: MclElement) -> MclElement:
    """Relative complement of a v b inside the Boolean filter [a, top].

    Agrees with implies whenever a and b are compatible.
    """
    _check_shapes(a, b)
    _require_proper(a, b)
    entries = tuple(x if y != x else X for x, y in zip(a.entries, b.entries))
    return MclElement(a.modulus, entries)


def atoms_below(m: MclElement, budget: Optional[int] = None) -> List[MclElement]:
    """Atoms under m, filling its X entries in lexicographic order"""
    _require_proper(m)
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    free = sorted(m.sigma)
    check_budget("atoms below", m.modulus.symbols ** len(free), budget)
    result = []
    for values in itertools.product(range(1, m.modulus.n), repeat=len(free)):
        entries = list(m.entries)
        for i, value in zip(free, values):
            entries[i] = value
        result.append(MclElement(m.modulus, tuple(entries)))
    return result


def coatoms_above(m: MclElement) -> List[MclElement]:
    """Coatoms over m, one per specified index; their meet is m"""
    _require_proper(m)
    result = []
    for i in sorted(m.specified):
        entries = [X] * m.indices
        entries[i] = m.entries[i]
        result.append(MclElement(m.modulus, tuple(entries)))
    return result


def proj(J: Iterable[int], m: MclElement) -> MclElement:
    """Free the coordinates in J"""
    _require_proper(m)
    J = set(J)
    if any(not 0 <= i < m.indices for i in J):
        raise PreconditionError(f"projection indices {sorted(J)} outside 0..{m.indices - 1}")
    entries = tuple(X if i in J else v for i, v in enumerate(m.entries))
    return MclElement(m.modulus, entries)


def from_representative(
    modulus: Union[Modulus, int], vector: Sequence[int], free: Iterable[int]
) -> MclElement:
    """Canonical form of the multi-cube vector + X_free.

    Coordinates outside free must carry a nonzero residue.
    """
    modulus = as_modulus(modulus)
    free = set(free)
    entries = []
    for i, value in enumerate(vector):
        if i in free:
            entries.append(X)
            continue
        value %= modulus.n
        if value == 0:
            raise PreconditionError(f"coordinate {i} is fixed at 0, which is not critical")
        entries.append(value)
    return MclElement(modulus, tuple(entries))


SignedSet = Tuple[FrozenSet[int], FrozenSet[int]]


def _require_cubic(m: MclElement):
    if m.modulus.n != 3:
        raise PreconditionError(f"signed sets need modulus 3, got {m.modulus.n}")


def to_signed_set(m: MclElement) -> SignedSet:
    """(A+, A-) with +1 entries in A+ and -1 (residue 2) entries in A-"""
    _require_cubic(m)
    _require_proper(m)
    positive = frozenset(i for i, v in enumerate(m.entries) if v == 1)
    negative = frozenset(i for i, v in enumerate(m.entries) if v == 2)
    return positive, negative


def from_signed_set(positive: Iterable[int], negative: Iterable[int], indices: int) -> MclElement:
    """Inverse of to_signed_set over Z_3"""
    positive, negative = frozenset(positive), frozenset(negative)
    if positive & negative:
        raise PreconditionError("signed set halves must be disjoint")
    entries = tuple(1 if i in positive else 2 if i in negative else X for i in range(indices))
    return MclElement(Modulus(3), entries)


def signed_set_contains(outer: SignedSet, inner: SignedSet) -> bool:
    """Componentwise inclusion of signed sets"""
    return inner[0] <= outer[0] and inner[1] <= outer[1]


def signed_set_delta(b: SignedSet, a: SignedSet) -> SignedSet:
    """Cubic-lattice delta on signed sets, a = f(a) containing b = f(b)"""
    b_pos, b_neg = b
    a_pos, a_neg = a
    return b_pos | (a_neg - b_neg), b_neg | (a_pos - b_pos)
