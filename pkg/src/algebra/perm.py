"""
Permutations of a finite symbol set {0, ..., m - 1}.

Composition follows function notation: (p * q)(x) = p(q(x)).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from src.errors import ShapeMismatchError


@dataclass(frozen=True, slots=True)
class Perm:
    """A bijection of {0, ..., m - 1} stored as its image array"""

    images: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.images, tuple):
            object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> Perm:
        """Build from images already known to be a bijection"""
        perm = object.__new__(cls)
        object.__setattr__(perm, "images", images)
        return perm

    @classmethod
    def identity(cls, m: int) -> Perm:
        return cls(tuple(range(m)))

    @classmethod
    def from_cycles(cls, m: int, *cycles: Sequence[int]) -> Perm:
        images = list(range(m))
        for cycle in cycles:
            for i, symbol in enumerate(cycle):
                images[symbol] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def transposition(cls, m: int, i: int, j: int) -> Perm:
        return cls.from_cycles(m, (i, j)) if i != j else cls.identity(m)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, symbol: int) -> int:
        return self.images[symbol]

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __invert__(self) -> Perm:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Cycle decomposition including fixed points, each cycle led by its least symbol"""
        seen = set()
        result = []
        for start in range(self.degree):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.images[x]
            result.append(tuple(cycle))
        return result

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.degree else 1

    def commutes_with(self, other: Perm) -> bool:
        p, q = self.images, other.images
        return all(p[q[x]] == q[p[x]] for x in range(len(p)))

    def to_list(self) -> List[int]:
        return list(self.images)


@dataclass(frozen=True)
class CycleType:
    """Multiplicities N_j of cycles of length j"""

    counts: Dict[int, int]

    @property
    def degree(self) -> int:
        return sum(length * count for length, count in self.counts.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, CycleType):
            return self.counts == other.counts
        if isinstance(other, dict):
            return self.counts == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.counts.items())))


def _check_degree(p: Perm, q: Perm):
    if p.degree != q.degree:
        raise ShapeMismatchError(
            f"permutations act on {p.degree} and {q.degree} symbols"
        )


def compose(p: Perm, q: Perm) -> Perm:
    """p after q"""
    _check_degree(p, q)
    images = p.images
    return Perm._trusted(tuple(images[x] for x in q.images))


def inverse(p: Perm) -> Perm:
    images = [0] * p.degree
    for x, y in enumerate(p.images):
        images[y] = x
    return Perm._trusted(tuple(images))


def cycle_type(p: Perm) -> CycleType:
    return CycleType(dict(sorted(Counter(len(c) for c in p.cycles()).items())))


def compose_all(perms: Iterable[Perm], m: int) -> Perm:
    result = Perm.identity(m)
    for p in perms:
        result = compose(result, p)
    return result
