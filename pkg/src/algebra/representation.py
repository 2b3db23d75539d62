"""
Unitary representation of M and Aut(M) on H = (C^{2k})^{tensor I}.

Basis vectors of H are indexed by atoms in big-endian order, index 0 being
the leftmost Kronecker factor. Generated *-algebras are computed as finite
span closures under the Frobenius inner product.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import null_space
from sympy.ntheory import primitive_root

from src.algebra.groups import (
    WreathElement,
    atom_action,
    centralizer_of_units,
)
from src.algebra.lattice import X, MclElement, coatoms
from src.algebra.perm import Perm
from src.algebra.ring import Modulus, as_modulus, is_prime
from src.config import settings
from src.errors import PreconditionError, ShapeMismatchError, check_budget

logger = logging.getLogger(__name__)

CMatrix = np.ndarray

ModulusLike = Union[Modulus, int]


class Labeling(str, Enum):
    """How residues are assigned to basis vectors of C^{2k}"""

    NATURAL = "natural"
    PRIMITIVE_ROOT = "primitive-root"


def _check_even(d: int):
    if not isinstance(d, int) or d < 2 or d % 2:
        raise ValueError(f"matrix size must be an even integer >= 2, got {d!r}")


def _roots_of_unity(d: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(d) / d)


def shift_matrix(d: int) -> CMatrix:
    """X_d with ones at (i, i + 1 mod d)"""
    _check_even(d)
    return np.roll(np.eye(d, dtype=np.complex128), 1, axis=1)


def clock_matrix(d: int) -> CMatrix:
    _check_even(d)
    return np.diag(_roots_of_unity(d))


def qft_matrix(d: int) -> CMatrix:
    """U_d[i][j] = omega^{ij} / sqrt(d), so that U* X U = D"""
    _check_even(d)
    exponents = np.outer(np.arange(d), np.arange(d)) % d
    return _roots_of_unity(d)[exponents] / np.sqrt(d)


def kron(mats: Sequence[CMatrix]) -> CMatrix:
    if not mats:
        raise ValueError("kron needs at least one factor")
    return reduce(np.kron, mats)


def _check_square(m: CMatrix):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeMismatchError(f"expected a square matrix, got shape {m.shape}")


def unitarity_error(m: CMatrix) -> float:
    _check_square(m)
    return float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])))


def is_projection(m: CMatrix, tol: float = 1e-9) -> bool:
    """Hermitian and idempotent to tol in Frobenius norm"""
    _check_square(m)
    return bool(
        np.linalg.norm(m - m.conj().T) < tol and np.linalg.norm(m @ m - m) < tol
    )


def hilbert_dimension(modulus: ModulusLike, indices: int) -> int:
    modulus = as_modulus(modulus)
    if indices < 1:
        raise ValueError(f"index set must contain at least one index, got {indices}")
    return modulus.symbols ** indices


def atom_basis_index(a: MclElement) -> int:
    if not a.is_atom:
        raise PreconditionError(f"{a} is not an atom")
    base = a.modulus.symbols
    index = 0
    for value in a.entries:
        index = index * base + (value - 1)
    return index


def _rank_one(d: int, position: int) -> CMatrix:
    p = np.zeros((d, d), dtype=np.complex128)
    p[position, position] = 1.0
    return p


def proj_element(m: MclElement) -> CMatrix:
    """Identity at the X entries, rank-one p_v at an entry v; zero for bottom.

    m <= n exactly when P_m P_n = P_m, and the range of P_{m meet n} is the
    intersection of the ranges of P_m and P_n.
    """
    if m.is_bottom:
        dim = hilbert_dimension(m.modulus, m.indices)
        return np.zeros((dim, dim), dtype=np.complex128)
    d = m.modulus.symbols
    factors = [
        np.eye(d, dtype=np.complex128) if value == X else _rank_one(d, value - 1)
        for value in m.entries
    ]
    return kron(factors)


def proj_atom(a: MclElement) -> CMatrix:
    dim = hilbert_dimension(a.modulus, a.indices)
    return _rank_one(dim, atom_basis_index(a))


def proj_coatom(c: MclElement) -> CMatrix:
    """Identity on every factor except a rank-one projection at the specified index"""
    if not c.is_coatom:
        raise PreconditionError(f"{c} is not a coatom")
    return proj_element(c)


def local_operator(op: CMatrix, i: int, modulus: ModulusLike, indices: int) -> CMatrix:
    """op acting on tensor factor i, identity elsewhere"""
    modulus = as_modulus(modulus)
    d = modulus.symbols
    if op.shape != (d, d):
        raise ShapeMismatchError(f"local operator must be {d}x{d}, got {op.shape}")
    if not 0 <= i < indices:
        raise PreconditionError(f"index {i} outside 0..{indices - 1}")
    identity = np.eye(d, dtype=np.complex128)
    return kron([op if j == i else identity for j in range(indices)])


def fourier_transform(modulus: ModulusLike, indices: int) -> CMatrix:
    """U_H, one QFT per index"""
    modulus = as_modulus(modulus)
    hilbert_dimension(modulus, indices)
    return kron([qft_matrix(modulus.symbols)] * indices)


def coatom_projections(modulus: ModulusLike, indices: int) -> List[CMatrix]:
    return [proj_coatom(c) for c in coatoms(modulus, indices)]


def conjugated_coatom_projections(modulus: ModulusLike, indices: int) -> List[CMatrix]:
    u = fourier_transform(modulus, indices)
    u_star = u.conj().T
    return [u @ p @ u_star for p in coatom_projections(modulus, indices)]


def permutation_matrix(p: Perm) -> CMatrix:
    """Sends basis vector x to basis vector p(x)"""
    d = p.degree
    m = np.zeros((d, d), dtype=np.complex128)
    m[list(p.images), list(range(d))] = 1.0
    return m


def rho_wreath(w: WreathElement, modulus: ModulusLike, indices: int) -> CMatrix:
    modulus = as_modulus(modulus)
    if w.indices != indices or w.symbols != modulus.symbols:
        raise ShapeMismatchError(
            f"wreath element on {w.symbols} symbols x {w.indices} indices "
            f"does not act on Z_{modulus.n}^{indices}"
        )
    return permutation_matrix(atom_action(w, modulus, indices))


def primitive_root_labeling(modulus: ModulusLike) -> Dict[int, int]:
    """Residue a -> discrete log of a to the least primitive root"""
    modulus = as_modulus(modulus)
    if not is_prime(modulus.n):
        raise PreconditionError(
            f"primitive-root labeling needs a prime modulus, got {modulus.n}"
        )
    g = int(primitive_root(modulus.n))
    labels = {}
    value = 1
    for exponent in range(modulus.symbols):
        labels[value] = exponent
        value = (value * g) % modulus.n
    return labels


def labeling_matrix(modulus: ModulusLike) -> CMatrix:
    """L with L[log(a), a - 1] = 1; conjugating by L relabels natural symbols by discrete logs"""
    modulus = as_modulus(modulus)
    labels = primitive_root_labeling(modulus)
    return permutation_matrix(Perm(tuple(labels[a] for a in range(1, modulus.n))))


def rho_at_index(
    p: Perm,
    i: int,
    modulus: ModulusLike,
    indices: int,
    labeling: Labeling = Labeling.NATURAL,
) -> CMatrix:
    modulus = as_modulus(modulus)
    if p.degree != modulus.symbols:
        raise ShapeMismatchError(
            f"permutation on {p.degree} symbols, expected {modulus.symbols}"
        )
    local = permutation_matrix(p)
    if labeling == Labeling.PRIMITIVE_ROOT:
        relabel = labeling_matrix(modulus)
        local = relabel @ local @ relabel.T
    return local_operator(local, i, modulus, indices)


def centralizer_representation(modulus: ModulusLike, indices: int) -> List[CMatrix]:
    """rho_i of the centralizer generators, at every index"""
    modulus = as_modulus(modulus)
    gens = centralizer_of_units(modulus).generators
    return [rho_at_index(g, i, modulus, indices) for i in range(indices) for g in gens]


def matrix_units(
    alpha: int, modulus: ModulusLike, indices: int
) -> Dict[Tuple[int, int], CMatrix]:
    """e_ij at index alpha for residues i, j in 1..2k"""
    modulus = as_modulus(modulus)
    if not 0 <= alpha < indices:
        raise PreconditionError(f"index {alpha} outside 0..{indices - 1}")
    d = modulus.symbols
    diagonal = {}
    for i in range(1, d + 1):
        entries = [X] * indices
        entries[alpha] = i
        diagonal[i] = proj_coatom(MclElement(modulus, tuple(entries)))
    units = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            swap = Perm.transposition(d, i - 1, j - 1)
            units[(i, j)] = diagonal[i] @ rho_at_index(swap, alpha, modulus, indices)
    return units


@dataclass
class SpanBasis:
    """Frobenius-orthonormal basis stored as flattened rows"""

    dim: int
    vectors: np.ndarray

    def __len__(self) -> int:
        return self.vectors.shape[0]

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def basis(self) -> List[CMatrix]:
        return [v.reshape(self.dim, self.dim) for v in self.vectors]

    @property
    def is_full(self) -> bool:
        return len(self) == self.dim * self.dim

    def contains(self, m: CMatrix, tol: Optional[float] = None) -> bool:
        return algebra_contains(self, m, tol)


def _same_size(gens: Sequence[CMatrix]) -> int:
    if not gens:
        raise ValueError("at least one matrix is required")
    for g in gens:
        _check_square(g)
    sizes = {g.shape[0] for g in gens}
    if len(sizes) > 1:
        raise ShapeMismatchError(f"matrices of different sizes {sorted(sizes)}")
    return sizes.pop()


def span_closure(
    gens: Sequence[CMatrix],
    tol: Optional[float] = None,
    budget: Optional[int] = None,
) -> SpanBasis:
    """Unital *-algebra generated by gens.

    Seeds identity, the generators and their adjoints, then multiplies every
    accepted basis element on the right by each generator until nothing new
    survives block Gram-Schmidt.
    """
    tol = settings.TOLERANCE if tol is None else tol
    budget = settings.SPAN_BASIS_BUDGET if budget is None else budget
    n = _same_size(gens)
    full = n * n
    check_budget("span basis", full, budget)

    factors: List[CMatrix] = []
    for g in gens:
        g = np.asarray(g, dtype=np.complex128)
        scale = np.linalg.norm(g, 2)
        if scale == 0:
            continue
        # unit operator norm keeps products of basis elements at Frobenius norm <= 1
        g = g / scale
        factors.append(g)
        adjoint = g.conj().T
        if np.linalg.norm(adjoint - g) > tol:
            factors.append(adjoint)

    vectors = np.zeros((full, full), dtype=np.complex128)
    rank = 0

    def accept(candidate: CMatrix) -> bool:
        nonlocal rank
        if rank == full:
            return False
        v = candidate.reshape(-1)
        # thresholds are absolute; products that vanish up to roundoff never get rescaled
        if np.linalg.norm(v) < tol * n:
            return False
        accepted = vectors[:rank]
        for _ in range(2):
            v = v - accepted.T @ (accepted.conj() @ v)
        residual = np.linalg.norm(v)
        if residual < tol * n:
            return False
        vectors[rank] = v / residual
        rank += 1
        return True

    accept(np.eye(n, dtype=np.complex128))
    for g in factors:
        accept(g)

    cursor = 0
    while cursor < rank and rank < full:
        element = vectors[cursor].reshape(n, n)
        for g in factors:
            accept(element @ g)
        cursor += 1

    logger.debug(f"Span closure of {len(gens)} generators in M_{n} has dimension {rank}")
    return SpanBasis(n, vectors[:rank].copy())


def algebra_contains(b: SpanBasis, m: CMatrix, tol: Optional[float] = None) -> bool:
    tol = settings.TOLERANCE if tol is None else tol
    if m.shape != (b.dim, b.dim):
        raise ShapeMismatchError(f"matrix of shape {m.shape} against a span in M_{b.dim}")
    v = np.asarray(m, dtype=np.complex128).reshape(-1)
    norm = np.linalg.norm(v)
    if norm == 0:
        return True
    residual = v - b.vectors.T @ (b.vectors.conj() @ v)
    return bool(np.linalg.norm(residual) < tol * norm)


def commutant_dimension(gens: Sequence[CMatrix], tol: Optional[float] = None) -> int:
    """dim {Y : Yg = gY for every g}, from the null space of the stacked commutator map"""
    tol = settings.TOLERANCE if tol is None else tol
    n = _same_size(gens)
    check_budget("commutant matrix size", n, settings.MAX_MATRIX_DIM)
    identity = np.eye(n, dtype=np.complex128)
    # row-major vec: vec(Y g) = (I kron g^T) vec(Y), vec(g Y) = (g kron I) vec(Y)
    system = np.vstack([np.kron(identity, g.T) - np.kron(g, identity) for g in gens])
    return null_space(system, rcond=tol).shape[1]


def projection_meet(p: CMatrix, q: CMatrix) -> CMatrix:
    """Projection onto range(p) intersected with range(q), via the 1-eigenspace of pqp"""
    if p.shape != q.shape:
        raise ShapeMismatchError(f"projections of shapes {p.shape} and {q.shape}")
    if not is_projection(p) or not is_projection(q):
        raise PreconditionError("projection_meet needs Hermitian idempotents")
    product = p @ q @ p
    eigenvalues, eigenvectors = np.linalg.eigh((product + product.conj().T) / 2)
    keep = np.abs(eigenvalues - 1.0) < settings.MEET_EIGEN_TOLERANCE
    kept = eigenvectors[:, keep]
    return kept @ kept.conj().T
