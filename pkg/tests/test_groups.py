"""
Tests for centralizers, wreath products and the automorphism group of M
"""
import itertools
import math

import numpy as np
import pytest

from src.algebra.groups import (
    PermGroup,
    WreathElement,
    atom_action,
    atom_action_group,
    aut_group_of_M,
    center_of_action,
    centralizer_elements,
    centralizer_in_sym,
    centralizer_of_units,
    centralizer_order_formula,
    global_unit_action,
    is_transitive,
    orbits,
    random_wreath_element,
    unit_wreath_generators,
    wreath_act,
    wreath_order,
)
from src.algebra.lattice import MclElement, atoms, coatoms, elements, scalar_mul
from src.algebra.perm import CycleType, Perm, cycle_type
from src.algebra.ring import aut_group_perms, mult_perm
from src.config import settings
from src.errors import BudgetExceededError, PreconditionError, ShapeMismatchError


@pytest.mark.timeout(5)
def test_centralizer_of_units_mod_five():
    """Test cyclic centralizer of order 4, transitive"""
    c = centralizer_of_units(5)
    assert c.order == 4
    assert is_transitive(c, 4)
    assert any(g.order() == 4 for g in c.elements)


@pytest.mark.timeout(5)
def test_centralizer_of_units_mod_nine():
    """Test order 12 with orbits of sizes 6 and 2"""
    c = centralizer_of_units(9)
    assert c.order == 12
    assert orbits(c, 8) == [(0, 1, 3, 4, 6, 7), (2, 5)]
    assert not is_transitive(c, 8)


@pytest.mark.timeout(30)
def test_centralizer_of_units_mod_fifteen_uses_search():
    """Test the search method beyond the brute-force limit"""
    c = centralizer_of_units(15)
    assert c.order == 64
    assert sorted(len(o) for o in orbits(c, 14)) == [2, 4, 8]


@pytest.mark.timeout(10)
def test_search_agrees_with_brute_force():
    """Test both centralizer methods on Z_9"""
    gens = aut_group_perms(9)
    assert centralizer_elements(gens, 8, method="search") == centralizer_elements(
        gens, 8, method="brute"
    )


def test_centralizer_of_identity_is_symmetric_group():
    """Test trivial generators give S_m"""
    assert centralizer_in_sym([Perm.identity(4)], 4).order == 24


@pytest.mark.timeout(120)
def test_centralizer_of_identity_at_nine_symbols():
    """Test S_9 is returned with generators even though 9! exceeds the closure budget"""
    group = centralizer_in_sym([Perm.identity(9)], 9)
    assert group.order == math.factorial(9) > settings.GROUP_BUDGET
    assert 0 < len(group.generators) <= 8
    regenerated = PermGroup(9, group.generators).enumerate(budget=group.order)
    assert regenerated.order == group.order


def test_generating_set_ignores_closure_budget_once_enumerated(mocker):
    """Test generators of an enumerated group are found under a tiny closure budget"""
    mocker.patch.object(settings, "GROUP_BUDGET", 10)
    group = centralizer_in_sym([Perm.identity(4)], 4)
    assert group.order == 24
    assert PermGroup(4, group.generators).enumerate(budget=24).order == 24


def test_centralizer_method_validation():
    """Test method and size guards"""
    with pytest.raises(BudgetExceededError):
        centralizer_elements([Perm.identity(10)], 10, method="brute")
    with pytest.raises(ValueError):
        centralizer_elements([Perm.identity(3)], 3, method="fast")
    with pytest.raises(ShapeMismatchError):
        centralizer_elements([Perm.identity(3)], 4)


@pytest.mark.parametrize(
    "counts,expected",
    [({6: 1, 2: 1}, 12), ({1: 4}, 24), ({4: 1}, 4), ({2: 2}, 8), ({1: 1, 3: 1}, 3)],
)
def test_centralizer_order_formula_examples(counts, expected):
    """Test prod j^N_j N_j!"""
    assert centralizer_order_formula(CycleType(counts)) == expected


def test_formula_matches_doubling_mod_nine():
    """Test formula against the brute-force centralizer of one unit"""
    sigma = mult_perm(2, 9)
    assert len(centralizer_elements([sigma], 8)) == centralizer_order_formula(cycle_type(sigma)) == 12


@pytest.mark.timeout(30)
def test_centralizer_order_formula_exhaustive():
    """Test brute-force centralizer orders for every permutation up to 6 symbols"""
    for m in range(1, 7):
        for images in itertools.permutations(range(m)):
            sigma = Perm(images)
            found = centralizer_elements([sigma], m, method="brute")
            assert len(found) == centralizer_order_formula(cycle_type(sigma))


def test_orbits_of_trivial_group():
    """Test trivial group is not transitive"""
    assert not is_transitive(PermGroup(3, ()), 3)
    assert orbits([], 3) == [(0,), (1,), (2,)]


def test_perm_group_enumeration():
    """Test closure, membership and generating set"""
    g = PermGroup(4, (Perm.from_cycles(4, (0, 1, 2, 3)), Perm.transposition(4, 0, 1)))
    full = g.enumerate()
    assert full.order == 24
    assert Perm.from_cycles(4, (0, 2)) in full
    regenerated = PermGroup(4, full.generating_set()).enumerate()
    assert set(regenerated.elements) == set(full.elements)


def test_perm_group_budget():
    """Test closure refuses above budget"""
    g = PermGroup(5, (Perm.from_cycles(5, (0, 1, 2, 3, 4)), Perm.transposition(5, 0, 1)))
    with pytest.raises(BudgetExceededError):
        g.enumerate(budget=10)
    with pytest.raises(PreconditionError):
        g.order


@pytest.mark.parametrize("base,indices,expected", [(4, 2, 32), (2, 3, 48), (7, 1, 7)])
def test_wreath_order(base, indices, expected):
    """Test base^|I| |I|!"""
    assert wreath_order(base, indices) == expected


def test_wreath_act_examples():
    """Test base and top actions"""
    m = MclElement.of(5, [1, "X"])
    assert wreath_act(WreathElement.identity(4, 2), m) == m

    swap = WreathElement.at_index(Perm.transposition(4, 0, 3), 0, 2)
    assert wreath_act(swap, m) == MclElement.of(5, [4, "X"])

    flip = WreathElement.index_permutation(Perm.transposition(2, 0, 1), 4)
    assert wreath_act(flip, MclElement.of(5, [1, 2])) == MclElement.of(5, [2, 1])


def test_wreath_act_shape_checks():
    """Test wreath elements of the wrong shape"""
    with pytest.raises(ShapeMismatchError):
        wreath_act(WreathElement.identity(2, 2), MclElement.of(5, [1, 2]))
    with pytest.raises(PreconditionError):
        wreath_act(WreathElement.identity(4, 2), MclElement.bottom(5, 2))


def test_wreath_action_is_a_group_action():
    """Test act(w1 w2) = act(w1) act(w2) on random pairs"""
    rng = np.random.default_rng(0)
    base = centralizer_of_units(5).elements
    listing = elements(5, 2)
    for _ in range(100):
        w1 = random_wreath_element(rng, base, 2)
        w2 = random_wreath_element(rng, base, 2)
        m = listing[int(rng.integers(len(listing)))]
        assert wreath_act(w1 * w2, m) == wreath_act(w1, wreath_act(w2, m))
        assert wreath_act(w1.inverse(), wreath_act(w1, m)) == m


@pytest.mark.parametrize("n", [5, 9])
def test_wreath_generators_commute_with_units(n):
    """Test Aut(M) generators commute with global unit scalars"""
    gens = aut_group_of_M(n, 2)
    for w in gens:
        for m in atoms(n, 2) + coatoms(n, 2):
            image = wreath_act(w, m)
            assert image.is_atom == m.is_atom
            assert image.is_coatom == m.is_coatom
            for u in (2, n - 1):
                assert wreath_act(w, scalar_mul(u, m)) == scalar_mul(u, image)


@pytest.mark.timeout(5)
@pytest.mark.parametrize("n,indices,expected", [(5, 2, 32), (3, 2, 8), (9, 1, 12), (3, 3, 48)])
def test_aut_group_order(n, indices, expected):
    """Test closure order of the Aut(M) action on atoms"""
    group = atom_action_group(aut_group_of_M(n, indices), n, indices).enumerate()
    assert group.order == expected


@pytest.mark.timeout(10)
@pytest.mark.parametrize("indices", [1, 2])
@pytest.mark.parametrize("n,transitive", [(3, True), (5, True), (7, True), (9, False), (15, False)])
def test_atom_transitivity_iff_prime(n, indices, transitive):
    """Test Aut(M) is transitive on atoms exactly at prime moduli"""
    group = atom_action_group(aut_group_of_M(n, indices), n, indices)
    assert is_transitive(group, group.degree) == transitive


def test_atom_action_matches_wreath_act():
    """Test atom permutation indexing"""
    w = WreathElement.index_permutation(Perm.transposition(2, 0, 1), 4)
    listing = atoms(5, 2)
    perm = atom_action(w, 5, 2)
    for i, a in enumerate(listing):
        assert listing[perm(i)] == wreath_act(w, a)


@pytest.mark.timeout(10)
@pytest.mark.parametrize("n,indices,expected", [(5, 2, 4), (3, 2, 2), (3, 1, 2)])
def test_center_is_global_unit_group(n, indices, expected):
    """Test center of Aut(M) equals the global unit multiplications"""
    center = center_of_action(aut_group_of_M(n, indices), n, indices)
    units = PermGroup(center.degree, tuple(global_unit_action(n, indices))).enumerate()
    assert center.order == expected
    assert set(center.elements) == set(units.elements)


def test_center_is_larger_at_composite_modulus():
    """Test the abelian centralizer at Z_9 is its own center"""
    center = center_of_action(aut_group_of_M(9, 1), 9, 1)
    assert center.order == 12


def test_unit_wreath_group():
    """Test Aut(Z_n) wr S_I order and its gap to Aut(M) at Z_9"""
    order = atom_action_group(unit_wreath_generators(9, 1), 9, 1).enumerate().order
    assert order == 6
    order = atom_action_group(unit_wreath_generators(5, 2), 5, 2).enumerate().order
    assert order == wreath_order(4, 2) == 4 ** 2 * math.factorial(2)
