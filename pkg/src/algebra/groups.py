"""
Permutation-group engine: finitely generated groups, centralizers in S_m,
wreath products C wr S_I and the automorphism group of M acting on atoms.

Wreath elements multiply as (b, t)(b', t') = (i -> b_{t'(i)} b'_i, t t'),
and act on lattice elements by sending the entry at index i through b_i to
index t(i). With this convention the action is a left group action.
"""
from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.algebra.lattice import X, MclElement, atoms
from src.algebra.perm import CycleType, Perm, compose, inverse
from src.algebra.ring import Modulus, aut_group_perms, as_modulus, units
from src.config import settings
from src.errors import BudgetExceededError, PreconditionError, ShapeMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PermGroup:
    """Subgroup of S_degree given by generators, optionally enumerated"""

    degree: int
    generators: Tuple[Perm, ...]
    elements: Optional[Tuple[Perm, ...]] = None

    def __post_init__(self):
        for g in self.generators:
            if g.degree != self.degree:
                raise ShapeMismatchError(
                    f"generator on {g.degree} symbols in a group of degree {self.degree}"
                )

    @property
    def is_enumerated(self) -> bool:
        return self.elements is not None

    def enumerate(self, budget: Optional[int] = None) -> PermGroup:
        """Breadth-first closure of the generators"""
        if self.elements is not None:
            return self
        budget = settings.GROUP_BUDGET if budget is None else budget
        identity = Perm.identity(self.degree)
        seen = {identity}
        order = [identity]
        queue = deque([identity])
        while queue:
            element = queue.popleft()
            for g in self.generators:
                product = compose(g, element)
                if product not in seen:
                    seen.add(product)
                    order.append(product)
                    if len(order) > budget:
                        raise BudgetExceededError("group closure", len(order), budget)
                    queue.append(product)
        logger.debug(f"Enumerated group of degree {self.degree} and order {len(order)}")
        return PermGroup(self.degree, self.generators, tuple(order))

    @property
    def order(self) -> int:
        """Number of elements; the group must be enumerated"""
        if self.elements is None:
            raise PreconditionError("group is not enumerated; call enumerate() first")
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in set(self.enumerate().elements)

    def generating_set(self, budget: Optional[int] = None) -> Tuple[Perm, ...]:
        """Greedy small generating set of an enumerated group.

        Subgroup closures are bounded by the group order, so an already
        enumerated group never trips the closure budget.
        """
        group = self.enumerate(budget)
        target = len(group.elements)
        chosen: List[Perm] = []
        reached = {Perm.identity(self.degree)}
        for element in sorted(group.elements, key=lambda p: p.images):
            if len(reached) == target:
                break
            if element in reached:
                continue
            chosen.append(element)
            reached = set(PermGroup(self.degree, tuple(chosen)).enumerate(target).elements)
        return tuple(chosen)

    def is_abelian(self) -> bool:
        """Whether the generators pairwise commute"""
        return all(g.commutes_with(h) for g, h in itertools.combinations(self.generators, 2))


def _as_group(g: Union[PermGroup, Sequence[Perm]], m: int) -> PermGroup:
    if isinstance(g, PermGroup):
        return g
    return PermGroup(m, tuple(g))


def _distinct_generators(gens: Iterable[Perm], m: int) -> List[Perm]:
    result = []
    for g in gens:
        if g.degree != m:
            raise ShapeMismatchError(f"generator on {g.degree} symbols, expected {m}")
        if not g.is_identity() and g not in result:
            result.append(g)
    return result


def _centralizer_brute(gens: List[Perm], m: int, limit: int) -> List[Perm]:
    if m > limit:
        raise BudgetExceededError("brute-force centralizer symbols", m, limit)
    result = []
    for images in itertools.permutations(range(m)):
        if all(
            all(images[g.images[x]] == g.images[images[x]] for x in range(m))
            for g in gens
        ):
            result.append(Perm._trusted(images))
    return result


def _centralizer_search(gens: List[Perm], m: int, budget: int) -> List[Perm]:
    """Backtracking over point images, propagating sigma(g(x)) = g(sigma(x))"""
    tables = [g.images for g in gens]
    sigma = [-1] * m
    used = [False] * m
    found: List[Perm] = []

    def undo(assigned: List[int]):
        for a in assigned:
            used[sigma[a]] = False
            sigma[a] = -1

    def extend(x: int, y: int) -> Optional[List[int]]:
        assigned: List[int] = []
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if sigma[a] != -1:
                if sigma[a] != b:
                    undo(assigned)
                    return None
                continue
            if used[b]:
                undo(assigned)
                return None
            sigma[a] = b
            used[b] = True
            assigned.append(a)
            for table in tables:
                stack.append((table[a], table[b]))
        return assigned

    def backtrack():
        try:
            x = sigma.index(-1)
        except ValueError:
            found.append(Perm._trusted(tuple(sigma)))
            if len(found) > budget:
                raise BudgetExceededError("centralizer search", len(found), budget)
            return
        for y in range(m):
            if used[y]:
                continue
            assigned = extend(x, y)
            if assigned is None:
                continue
            backtrack()
            undo(assigned)

    backtrack()
    return sorted(found, key=lambda p: p.images)


def centralizer_elements(
    gens: Sequence[Perm],
    m: int,
    method: str = "auto",
    budget: Optional[int] = None,
) -> Tuple[Perm, ...]:
    """Every permutation of S_m commuting with each generator, sorted by images.

    method "brute" scans all of S_m (m <= BRUTE_FORCE_MAX_SYMBOLS),
    "search" backtracks over point images, "auto" picks brute force when
    allowed and the search otherwise.
    """
    limit = settings.BRUTE_FORCE_MAX_SYMBOLS
    budget = settings.GROUP_BUDGET if budget is None else budget
    distinct = _distinct_generators(gens, m)
    if method == "auto":
        method = "brute" if m <= limit else "search"
    if method == "brute":
        elements = _centralizer_brute(distinct, m, limit)
    elif method == "search":
        elements = _centralizer_search(distinct, m, budget)
    else:
        raise ValueError(f"unknown centralizer method {method!r}")
    logger.debug(f"Centralizer in S_{m} of {len(distinct)} generators has order {len(elements)} ({method})")
    return tuple(elements)


def centralizer_in_sym(
    gens: Sequence[Perm],
    m: int,
    method: str = "auto",
    budget: Optional[int] = None,
) -> PermGroup:
    """The enumerated centralizer with a small generating set"""
    elements = centralizer_elements(gens, m, method, budget)
    group = PermGroup(m, (), elements)
    return PermGroup(m, group.generating_set(), elements)


def centralizer_order_formula(t: CycleType) -> int:
    """prod_j j^{N_j} N_j!"""
    return math.prod(length ** count * math.factorial(count) for length, count in t.counts.items())


def orbits(g: Union[PermGroup, Sequence[Perm]], m: int) -> List[Tuple[int, ...]]:
    """Orbit partition of {0..m-1}, each orbit sorted, ordered by least element"""
    group = _as_group(g, m)
    gens = group.generators or (group.elements or ())
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in gens:
        for x in range(m):
            rx, ry = find(x), find(perm.images[x])
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    classes: Dict[int, List[int]] = {}
    for x in range(m):
        classes.setdefault(find(x), []).append(x)
    return sorted((tuple(c) for c in classes.values()), key=lambda c: c[0])


def is_transitive(g: Union[PermGroup, Sequence[Perm]], m: int) -> bool:
    """Single orbit on {0..m-1}"""
    return len(orbits(g, m)) == 1


def wreath_order(base_order: int, indices: int) -> int:
    """|C wr S_I| = |C|^|I| |I|!"""
    if indices < 1 or base_order < 1:
        raise ValueError(f"need positive base order and index count, got {base_order}, {indices}")
    return base_order ** indices * math.factorial(indices)


@dataclass(frozen=True)
class WreathElement:
    """(base, top) in C wr S_I"""

    base: Tuple[Perm, ...]
    top: Perm

    def __post_init__(self):
        if not isinstance(self.base, tuple):
            object.__setattr__(self, "base", tuple(self.base))
        if len(self.base) != self.top.degree:
            raise ShapeMismatchError(
                f"{len(self.base)} base permutations for a top of degree {self.top.degree}"
            )
        if len({b.degree for b in self.base}) > 1:
            raise ShapeMismatchError("base permutations act on different symbol sets")

    @classmethod
    def identity(cls, symbols: int, indices: int) -> WreathElement:
        return cls((Perm.identity(symbols),) * indices, Perm.identity(indices))

    @classmethod
    def at_index(cls, p: Perm, i: int, indices: int) -> WreathElement:
        base = [Perm.identity(p.degree)] * indices
        base[i] = p
        return cls(tuple(base), Perm.identity(indices))

    @classmethod
    def index_permutation(cls, t: Perm, symbols: int) -> WreathElement:
        return cls((Perm.identity(symbols),) * t.degree, t)

    @property
    def symbols(self) -> int:
        return self.base[0].degree

    @property
    def indices(self) -> int:
        return self.top.degree

    def __mul__(self, other: WreathElement) -> WreathElement:
        """(b, t)(b', t') = (i -> b_{t'(i)} b'_i, t t')"""
        if self.indices != other.indices or self.symbols != other.symbols:
            raise ShapeMismatchError("wreath elements of different shapes")
        base = tuple(
            compose(self.base[other.top(i)], other.base[i]) for i in range(self.indices)
        )
        return WreathElement(base, compose(self.top, other.top))

    def inverse(self) -> WreathElement:
        """Group inverse under the wreath product"""
        top_inv = inverse(self.top)
        base = tuple(inverse(self.base[top_inv(i)]) for i in range(self.indices))
        return WreathElement(base, top_inv)


def wreath_act(w: WreathElement, m: MclElement) -> MclElement:
    """Entry at index i is sent through base_i to index top(i); X stays X"""
    if m.is_bottom:
        raise PreconditionError("wreath action is undefined on the bottom element")
    if w.indices != m.indices or w.symbols != m.modulus.symbols:
        raise ShapeMismatchError(
            f"wreath element on {w.symbols} symbols x {w.indices} indices "
            f"cannot act on Z_{m.modulus.n}^{m.indices}"
        )
    entries = [X] * m.indices
    for i, value in enumerate(m.entries):
        entries[w.top(i)] = X if value == X else w.base[i](value - 1) + 1
    return MclElement(m.modulus, tuple(entries))


def centralizer_of_units(modulus: Union[Modulus, int]) -> PermGroup:
    """C_{S_2k}(Aut(Z_{2k+1})) acting on the nonzero residues"""
    modulus = as_modulus(modulus)
    return centralizer_in_sym(aut_group_perms(modulus), modulus.symbols)


def _embed_generators(base_gens: Iterable[Perm], symbols: int, indices: int) -> List[WreathElement]:
    gens = [WreathElement.at_index(p, i, indices) for i in range(indices) for p in base_gens]
    for i in range(indices - 1):
        gens.append(WreathElement.index_permutation(Perm.transposition(indices, i, i + 1), symbols))
    return gens


def aut_group_of_M(modulus: Union[Modulus, int], indices: int) -> List[WreathElement]:
    """Generators of C_{S_2k}(Aut(Z_{2k+1})) wr S_I"""
    modulus = as_modulus(modulus)
    centralizer = centralizer_of_units(modulus)
    return _embed_generators(centralizer.generators, modulus.symbols, indices)


def unit_wreath_generators(modulus: Union[Modulus, int], indices: int) -> List[WreathElement]:
    """Generators of Aut(Z_{2k+1}) wr S_I, the unit-valued permutation group"""
    modulus = as_modulus(modulus)
    unit_group = PermGroup(modulus.symbols, tuple(aut_group_perms(modulus)))
    return _embed_generators(unit_group.generating_set(), modulus.symbols, indices)


def _atom_table(modulus: Modulus, indices: int, budget: Optional[int]):
    listing = atoms(modulus, indices, budget=budget)
    return listing, {a.entries: idx for idx, a in enumerate(listing)}


def atom_action(
    w: WreathElement, modulus: Union[Modulus, int], indices: int, budget: Optional[int] = None
) -> Perm:
    """Permutation of atom basis indices induced by w"""
    modulus = as_modulus(modulus)
    listing, index_of = _atom_table(modulus, indices, budget)
    return Perm(tuple(index_of[wreath_act(w, a).entries] for a in listing))


def atom_action_group(
    gens: Sequence[WreathElement],
    modulus: Union[Modulus, int],
    indices: int,
    budget: Optional[int] = None,
) -> PermGroup:
    """Group generated by gens as permutations of atom basis indices"""
    modulus = as_modulus(modulus)
    listing, index_of = _atom_table(modulus, indices, budget)
    perms = tuple(
        Perm(tuple(index_of[wreath_act(w, a).entries] for a in listing)) for w in gens
    )
    return PermGroup(len(listing), perms)


def global_unit_action(modulus: Union[Modulus, int], indices: int) -> List[Perm]:
    """Atom permutations of the scalar multiplications by units"""
    modulus = as_modulus(modulus)
    listing, index_of = _atom_table(modulus, indices, None)
    n = modulus.n
    return [
        Perm(tuple(index_of[tuple((u.value * v) % n for v in a.entries)] for a in listing))
        for u in units(modulus)
    ]


def center_of_action(
    gens: Sequence[WreathElement],
    modulus: Union[Modulus, int],
    indices: int,
    budget: Optional[int] = None,
) -> PermGroup:
    """Center of the group generated by gens, as permutations of atoms"""
    group = atom_action_group(gens, modulus, indices).enumerate(budget)
    center = tuple(
        z for z in group.elements if all(z.commutes_with(g) for g in group.generators)
    )
    logger.debug(f"Center of an action group of order {group.order} has order {len(center)}")
    result = PermGroup(group.degree, (), center)
    return PermGroup(group.degree, result.generating_set(), center)


def random_wreath_element(
    rng: np.random.Generator, base_elements: Sequence[Perm], indices: int
) -> WreathElement:
    """Uniform base entries from base_elements and a uniform top permutation"""
    base = tuple(base_elements[int(rng.integers(len(base_elements)))] for _ in range(indices))
    top = Perm(tuple(int(i) for i in rng.permutation(indices)))
    return WreathElement(base, top)
