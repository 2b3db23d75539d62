"""
Tests for Pauli matrices, the permutation representation and generated algebras
"""
import itertools

import numpy as np
import pytest

from src.algebra.groups import (
    WreathElement,
    aut_group_of_M,
    centralizer_of_units,
    random_wreath_element,
    wreath_act,
)
from src.algebra.lattice import MclElement, atoms, coatoms, elements, leq, meet
from src.algebra.perm import Perm
from src.algebra.ring import mult_perm
from src.algebra.representation import (
    Labeling,
    algebra_contains,
    atom_basis_index,
    centralizer_representation,
    clock_matrix,
    coatom_projections,
    commutant_dimension,
    conjugated_coatom_projections,
    is_projection,
    kron,
    labeling_matrix,
    local_operator,
    matrix_units,
    permutation_matrix,
    primitive_root_labeling,
    proj_atom,
    proj_coatom,
    proj_element,
    projection_meet,
    qft_matrix,
    rho_at_index,
    rho_wreath,
    shift_matrix,
    span_closure,
    unitarity_error,
)
from src.errors import PreconditionError, ShapeMismatchError

EXACT = 1e-12


def close(a, b, tol=EXACT):
    return np.linalg.norm(np.asarray(a) - np.asarray(b)) < tol


def test_pauli_matrices_size_two():
    """Test X, Z and the Hadamard gate"""
    assert close(shift_matrix(2), [[0, 1], [1, 0]])
    assert close(clock_matrix(2), [[1, 0], [0, -1]])
    assert close(qft_matrix(2), np.array([[1, 1], [1, -1]]) / np.sqrt(2))


def test_pauli_matrices_size_four():
    """Test exact entries at d = 4"""
    x = shift_matrix(4)
    assert x[0, 1] == 1 and x[3, 0] == 1 and x[1, 0] == 0
    assert close(clock_matrix(4), np.diag([1, 1j, -1, -1j]))
    u = qft_matrix(4)
    assert close(u[1], np.array([1, 1j, -1, -1j]) / 2)
    assert close(u[2], np.array([1, -1, 1, -1]) / 2)


@pytest.mark.parametrize("d", [0, 1, 3, 5, 2.0])
def test_pauli_sizes_must_be_even(d):
    """Test odd and non-integer sizes are refused"""
    with pytest.raises(ValueError):
        shift_matrix(d)
    with pytest.raises(ValueError):
        qft_matrix(d)


@pytest.mark.timeout(1)
@pytest.mark.parametrize("d", [2, 4, 6, 8, 10])
def test_fourier_diagonalizes_shift(d):
    """Test U* X U = D and unitarity"""
    u = qft_matrix(d)
    assert close(u.conj().T @ shift_matrix(d) @ u, clock_matrix(d), 1e-9)
    for m in (shift_matrix(d), clock_matrix(d), u):
        assert unitarity_error(m) < 1e-10


def test_kron():
    """Test Kronecker products of factor lists"""
    x = shift_matrix(2)
    assert close(kron([x]), x)
    assert kron([x, np.eye(2)]).shape == (4, 4)
    assert close(kron([np.eye(2), np.eye(2)]), np.eye(4))
    with pytest.raises(ValueError):
        kron([])


def test_atom_basis_index():
    """Test big-endian indexing of atoms"""
    assert atom_basis_index(MclElement.of(5, [1, 1])) == 0
    assert atom_basis_index(MclElement.of(5, [1, 2])) == 1
    assert atom_basis_index(MclElement.of(5, [4, 4])) == 15
    assert [atom_basis_index(a) for a in atoms(5, 2)] == list(range(16))
    with pytest.raises(PreconditionError):
        atom_basis_index(MclElement.of(5, [1, "X"]))


def test_projection_traces():
    """Test ranks of atom and coatom projections"""
    a = MclElement.of(5, [2, 3])
    c = MclElement.of(5, [2, "X"])
    assert is_projection(proj_atom(a))
    assert is_projection(proj_coatom(c))
    assert np.trace(proj_atom(a)).real == pytest.approx(1)
    assert np.trace(proj_coatom(c)).real == pytest.approx(4)
    assert close(proj_coatom(c) @ proj_atom(a), proj_atom(a))
    with pytest.raises(PreconditionError):
        proj_coatom(a)


def test_element_projection_special_cases():
    """Test top, bottom, atoms and coatoms map to the expected projections"""
    assert close(proj_element(MclElement.top(5, 2)), np.eye(16))
    assert close(proj_element(MclElement.bottom(5, 2)), np.zeros((16, 16)))
    for a in atoms(3, 2):
        assert close(proj_element(a), proj_atom(a))
    for c in coatoms(5, 2):
        assert close(proj_element(c), proj_coatom(c))
    m = MclElement.of(5, ["X", 3, "X"])
    assert is_projection(proj_element(m))
    assert np.trace(proj_element(m)).real == pytest.approx(16)


@pytest.mark.parametrize("n,indices", [(3, 1), (3, 2), (5, 1), (5, 2), (3, 3)])
def test_element_projections_embed_order(n, indices):
    """Test m <= n iff P_m P_n = P_m, and the projection meet is P of the lattice meet"""
    members = elements(n, indices) + [MclElement.bottom(n, indices)]
    projections = {m: proj_element(m) for m in members}
    for m, k in itertools.product(members, repeat=2):
        p, q = projections[m], projections[k]
        assert close(p @ q, p) == leq(m, k)
        assert close(projection_meet(p, q), projections[meet(m, k)], 1e-9)


@pytest.mark.parametrize("n,indices", [(3, 2), (5, 1), (5, 2), (3, 3)])
def test_coatom_projections_resolve_identity(n, indices):
    """Test the coatoms specified at each index sum to the identity"""
    dim = (n - 1) ** indices
    for alpha in range(indices):
        total = sum(
            p for c, p in zip(coatoms(n, indices), coatom_projections(n, indices))
            if alpha in c.specified
        )
        assert close(total, np.eye(dim))
    assert close(sum(proj_atom(a) for a in atoms(n, indices)), np.eye(dim))


def test_local_operator_validation():
    """Test factor position and size checks"""
    with pytest.raises(ShapeMismatchError):
        local_operator(shift_matrix(2), 0, 5, 2)
    with pytest.raises(PreconditionError):
        local_operator(shift_matrix(4), 2, 5, 2)


def test_local_factors_commute():
    """Test operators on different tensor factors commute"""
    a = local_operator(shift_matrix(4), 0, 5, 2)
    b = local_operator(clock_matrix(4), 1, 5, 2)
    assert close(a @ b, b @ a)
    c = local_operator(clock_matrix(4), 0, 5, 2)
    assert not close(a @ c, c @ a)


def test_permutation_matrix_sends_x_to_p_of_x():
    """Test P e_x = e_{p(x)}"""
    p = Perm.from_cycles(3, (0, 2))
    m = permutation_matrix(p)
    for x in range(3):
        assert close(m @ np.eye(3)[x], np.eye(3)[p(x)])


def test_rho_identity_and_shape():
    """Test rho of the identity and mismatched shapes"""
    assert close(rho_wreath(WreathElement.identity(4, 2), 5, 2), np.eye(16))
    with pytest.raises(ShapeMismatchError):
        rho_wreath(WreathElement.identity(4, 2), 5, 1)


@pytest.mark.timeout(5)
def test_rho_is_unitary_homomorphism():
    """Test rho(w1 w2) = rho(w1) rho(w2) on random wreath elements"""
    rng = np.random.default_rng(0)
    base = centralizer_of_units(5).elements
    for _ in range(20):
        w1 = random_wreath_element(rng, base, 2)
        w2 = random_wreath_element(rng, base, 2)
        product = rho_wreath(w1 * w2, 5, 2)
        assert close(product, rho_wreath(w1, 5, 2) @ rho_wreath(w2, 5, 2))
        assert unitarity_error(product) < EXACT


@pytest.mark.parametrize("n,indices", [(5, 2), (9, 1), (3, 3)])
def test_rho_conjugates_coatom_projections(n, indices):
    """Test rho(w) p_c rho(w)* = p_{w c}"""
    for w in aut_group_of_M(n, indices):
        r = rho_wreath(w, n, indices)
        for c in coatoms(n, indices):
            assert close(r @ proj_coatom(c) @ r.conj().T, proj_coatom(wreath_act(w, c)))


@pytest.mark.parametrize("n", [3, 5, 9])
def test_natural_cycle_is_shift_transpose(n):
    """Test the cycle x -> x+1 is represented by X^T"""
    d = n - 1
    cycle = Perm.from_cycles(d, tuple(range(d)))
    assert close(rho_at_index(cycle, 0, n, 1), shift_matrix(d).T)


@pytest.mark.parametrize("n,root", [(5, 2), (7, 3), (11, 2)])
def test_primitive_root_labeling_turns_units_into_shift(n, root):
    """Test multiplication by the primitive root becomes X^T"""
    labels = primitive_root_labeling(n)
    assert labels[1] == 0 and labels[root] == 1
    local = rho_at_index(mult_perm(root, n), 0, n, 1, Labeling.PRIMITIVE_ROOT)
    assert close(local, shift_matrix(n - 1).T)
    assert unitarity_error(labeling_matrix(n)) < EXACT


def test_primitive_root_labeling_needs_prime():
    """Test composite moduli are refused"""
    with pytest.raises(PreconditionError):
        primitive_root_labeling(9)
    with pytest.raises(PreconditionError):
        rho_at_index(mult_perm(2, 9), 0, 9, 1, Labeling.PRIMITIVE_ROOT)


def test_centralizer_representation_size():
    """Test one matrix per generator and index"""
    gens = centralizer_of_units(5).generators
    mats = centralizer_representation(5, 2)
    assert len(mats) == 2 * len(gens)
    assert all(m.shape == (16, 16) for m in mats)


@pytest.mark.timeout(5)
@pytest.mark.parametrize("n,indices", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_matrix_unit_relations(n, indices):
    """Test e_ij e_kl = delta_jk e_il, e_ij* = e_ji and sum e_ii = I"""
    d = n - 1
    dim = d ** indices
    for alpha in range(indices):
        e = matrix_units(alpha, n, indices)
        assert len(e) == d * d
        assert close(sum(e[(i, i)] for i in range(1, d + 1)), np.eye(dim))
        for (i, j), (k, l) in itertools.product(e, repeat=2):
            expected = e[(i, l)] if j == k else np.zeros((dim, dim))
            assert close(e[(i, j)] @ e[(k, l)], expected)
        for (i, j), eij in e.items():
            assert close(eij.conj().T, e[(j, i)])


def test_matrix_units_index_range():
    """Test alpha outside the index set"""
    with pytest.raises(PreconditionError):
        matrix_units(2, 5, 2)


@pytest.mark.parametrize(
    "n,indices,expected", [(5, 1, 4), (3, 2, 4), (5, 2, 16)]
)
def test_coatom_span_is_diagonal_algebra(n, indices, expected):
    """Test coatom projections generate the diagonal matrices"""
    span = span_closure(coatom_projections(n, indices))
    assert len(span) == expected
    assert span.contains(local_operator(clock_matrix(n - 1), 0, n, indices))
    assert not span.contains(local_operator(shift_matrix(n - 1), 0, n, indices))


def test_conjugated_span_contains_shifts():
    """Test the Fourier-conjugated coatoms generate the shift algebra"""
    span = span_closure(conjugated_coatom_projections(5, 2))
    assert len(span) == 16
    for i in range(2):
        assert span.contains(local_operator(shift_matrix(4), i, 5, 2))
    assert not span.contains(local_operator(clock_matrix(4), 0, 5, 2))


@pytest.mark.parametrize("n,indices,expected", [(3, 1, 2), (5, 1, 4), (7, 1, 6), (5, 2, 16)])
def test_conjugated_span_is_commutative(n, indices, expected):
    """Test the conjugated coatom algebra matches its own commutant"""
    projections = conjugated_coatom_projections(n, indices)
    span = span_closure(projections)
    assert len(span) == expected == commutant_dimension(projections)


def test_span_closure_ignores_vanishing_products():
    """Test products that cancel only up to roundoff add nothing"""
    p, q = conjugated_coatom_projections(5, 1)[:2]
    assert np.linalg.norm(p @ q) < 1e-12
    assert len(span_closure([p, q])) == 3
    assert len(span_closure([1e6 * p, 1e-6 * q])) == 3
    assert len(span_closure([np.zeros((4, 4))])) == 1


def test_span_closure_of_identity():
    """Test the identity generates the scalars"""
    span = span_closure([np.eye(3)])
    assert len(span) == 1
    assert algebra_contains(span, 2 * np.eye(3))
    assert not algebra_contains(span, np.diag([1.0, 0.0, 0.0]))
    assert not span.is_full


def test_span_closure_validation():
    """Test empty and mixed-size generators"""
    with pytest.raises(ValueError):
        span_closure([])
    with pytest.raises(ShapeMismatchError):
        span_closure([np.eye(2), np.eye(3)])
    with pytest.raises(ShapeMismatchError):
        algebra_contains(span_closure([np.eye(2)]), np.eye(3))


@pytest.mark.timeout(60)
@pytest.mark.parametrize("n,indices,expected", [(5, 1, 16), (3, 2, 16), (5, 2, 256), (9, 1, 64)])
def test_fourier_pair_generates_full_algebra(n, indices, expected):
    """Test coatom projections with their Fourier conjugates span M_dim"""
    span = span_closure(conjugated_coatom_projections(n, indices) + coatom_projections(n, indices))
    assert len(span) == expected
    assert span.is_full


@pytest.mark.timeout(10)
def test_centralizer_pair_fails_to_generate_at_nine():
    """Test rho(C) with coatom projections spans 40 of 64 at Z_9"""
    span = span_closure(centralizer_representation(9, 1) + coatom_projections(9, 1))
    assert len(span) == 40


@pytest.mark.timeout(10)
def test_centralizer_pair_generates_at_five():
    """Test rho(C) with coatom projections spans M_4 at Z_5"""
    span = span_closure(centralizer_representation(5, 1) + coatom_projections(5, 1))
    assert span.is_full


def test_commutant_dimensions():
    """Test commutants of small families"""
    assert commutant_dimension([np.eye(3)]) == 9
    units = list(matrix_units(0, 5, 1).values())
    assert commutant_dimension(units) == 1
    assert commutant_dimension(coatom_projections(5, 1)) == 4
    projections = coatom_projections(3, 2)
    assert commutant_dimension(projections) == 4 == len(span_closure(projections))


def test_matrix_unit_commutant_at_two_indices():
    """Test (2k)^(2(|I|-1)) for units at one index"""
    units = list(matrix_units(0, 3, 2).values())
    assert commutant_dimension(units) == 4


def test_projection_meet():
    """Test meets of diagonal projections"""
    p = np.diag([1.0, 1.0, 0.0]).astype(np.complex128)
    q = np.diag([0.0, 1.0, 1.0]).astype(np.complex128)
    assert close(projection_meet(p, q), np.diag([0.0, 1.0, 0.0]), 1e-9)
    assert close(projection_meet(p, p), p, 1e-9)


@pytest.mark.parametrize("n,indices", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_projection_meet_of_fourier_pair(n, indices):
    """Test pqp = p/2k and a zero meet for coatoms specified at the same index"""
    d = n - 1
    dim = d ** indices
    conjugated = dict(zip(coatoms(n, indices), conjugated_coatom_projections(n, indices)))
    for c in coatoms(n, indices):
        p = proj_coatom(c)
        for c2, q in conjugated.items():
            if c2.specified != c.specified:
                continue
            assert np.linalg.norm(p @ q @ p - p / d) < 1e-9
            assert close(projection_meet(p, q), np.zeros((dim, dim)), 1e-9)


def test_projection_meet_validation():
    """Test non-projections and mismatched shapes"""
    with pytest.raises(PreconditionError):
        projection_meet(shift_matrix(2), np.eye(2))
    with pytest.raises(ShapeMismatchError):
        projection_meet(np.eye(2), np.eye(3))
