"""
Suite Registry and Implementations
Named property checks run against one lattice configuration
"""
import itertools
import logging
from functools import cached_property
from typing import Any, Callable, Dict, List, Tuple

import numpy as np
from sympy import totient as sympy_totient
from sympy.ntheory import primitive_root

from src.algebra.groups import (
    PermGroup,
    WreathElement,
    aut_group_of_M,
    atom_action_group,
    center_of_action,
    centralizer_elements,
    centralizer_in_sym,
    centralizer_order_formula,
    global_unit_action,
    is_transitive,
    orbits,
    random_wreath_element,
    unit_wreath_generators,
    wreath_act,
    wreath_order,
)
from src.algebra.lattice import (
    X,
    MclElement,
    atoms,
    atoms_below,
    coatoms,
    coatoms_above,
    compatible,
    delta,
    elements,
    filter_implies,
    from_representative,
    from_signed_set,
    implies,
    join,
    join_all,
    leq,
    meet,
    meet_all,
    proj,
    scalar_mul,
    signed_set_contains,
    signed_set_delta,
    to_signed_set,
)
from src.algebra.perm import Perm, cycle_type
from src.algebra.representation import (
    Labeling,
    SpanBasis,
    clock_matrix,
    commutant_dimension,
    conjugated_coatom_projections,
    coatom_projections,
    hilbert_dimension,
    local_operator,
    matrix_units,
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
from src.algebra.ring import Modulus, aut_group_perms, is_prime, mult_perm, units
from src.config import settings
from src.errors import BudgetExceededError, check_budget
from src.schemas import CheckResult, VerificationReport
from src.verification.report import CheckSkipped, Measurement, RunConfig, exhaustive

logger = logging.getLogger(__name__)

UNITARY_TOLERANCE = 1e-10
FORMULA_MAX_SYMBOLS = 6
PAULI_SIZES = (2, 4, 6, 8, 10)

Check = Callable[["SuiteContext"], Measurement]


def _norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def _mutually_contained(a: SpanBasis, b: SpanBasis, tol: float) -> bool:
    return all(b.contains(m, tol) for m in a.basis) and all(a.contains(m, tol) for m in b.basis)


class SuiteContext:
    """Lazily computed objects shared by the checks of one suite run"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.modulus = Modulus(config.modulus)
        self.indices = config.indices
        self.tolerance = config.tolerance
        self.prime = is_prime(config.modulus)
        self.rng = np.random.default_rng(config.seed)

    @property
    def symbols(self) -> int:
        return self.modulus.symbols

    def require_prime(self):
        if not self.prime:
            raise CheckSkipped(f"needs a prime modulus, got {self.modulus.n}")

    def require_cubic(self):
        if self.modulus.n != 3:
            raise CheckSkipped(f"needs modulus 3, got {self.modulus.n}")

    def pairs(self, items: List[Any]):
        check_budget("pairs", len(items) ** 2, self.config.budget)
        return itertools.product(items, repeat=2)

    def triples(self, items: List[Any]):
        check_budget("triples", len(items) ** 3, self.config.budget)
        return itertools.product(items, repeat=3)

    @cached_property
    def elements(self) -> List[MclElement]:
        return elements(self.modulus, self.indices, budget=self.config.budget)

    @cached_property
    def with_bottom(self) -> List[MclElement]:
        return self.elements + [MclElement.bottom(self.modulus, self.indices)]

    @cached_property
    def atoms(self) -> List[MclElement]:
        return atoms(self.modulus, self.indices, budget=self.config.budget)

    @cached_property
    def coatoms(self) -> List[MclElement]:
        return coatoms(self.modulus, self.indices, budget=self.config.budget)

    @cached_property
    def top(self) -> MclElement:
        return MclElement.top(self.modulus, self.indices)

    @cached_property
    def comparable_pairs(self) -> List[Tuple[MclElement, MclElement]]:
        return [(a, b) for a, b in self.pairs(self.elements) if leq(a, b)]

    @cached_property
    def unit_values(self) -> List[int]:
        return [u.value for u in units(self.modulus)]

    @cached_property
    def centralizer(self) -> PermGroup:
        return centralizer_in_sym(aut_group_perms(self.modulus), self.symbols)

    @cached_property
    def aut_generators(self) -> List[WreathElement]:
        return aut_group_of_M(self.modulus, self.indices)

    @cached_property
    def aut_action(self) -> PermGroup:
        return atom_action_group(self.aut_generators, self.modulus, self.indices).enumerate()

    @cached_property
    def dimension(self) -> int:
        dim = hilbert_dimension(self.modulus, self.indices)
        check_budget("hilbert space dimension", dim, settings.MAX_MATRIX_DIM)
        return dim

    @cached_property
    def coatom_projections(self) -> List[np.ndarray]:
        self.dimension
        return coatom_projections(self.modulus, self.indices)

    @cached_property
    def conjugated_projections(self) -> List[np.ndarray]:
        self.dimension
        return conjugated_coatom_projections(self.modulus, self.indices)

    @cached_property
    def labeling(self) -> Labeling:
        return Labeling.PRIMITIVE_ROOT if self.prime else Labeling.NATURAL

    @cached_property
    def centralizer_matrices(self) -> List[np.ndarray]:
        self.dimension
        return [
            rho_at_index(g, i, self.modulus, self.indices, self.labeling)
            for i in range(self.indices)
            for g in self.centralizer.generators
        ]

    @cached_property
    def coatom_span(self) -> SpanBasis:
        return span_closure(self.coatom_projections, self.tolerance)

    @cached_property
    def conjugated_span(self) -> SpanBasis:
        return span_closure(self.conjugated_projections, self.tolerance)

    def random_element(self) -> MclElement:
        values = self.rng.integers(0, self.modulus.n, size=self.indices)
        return MclElement(self.modulus, tuple(int(v) for v in values))

    def random_wreath(self) -> WreathElement:
        return random_wreath_element(self.rng, self.centralizer.elements, self.indices)

    def random_representative(self, m: MclElement) -> List[int]:
        """gamma(m) with arbitrary residues on the X coordinates"""
        return [
            int(self.rng.integers(0, self.modulus.n)) if v == X else v for v in m.entries
        ]


class SuiteRegistry:
    """Registry of all available verification suites"""

    def __init__(self):
        self.suites: Dict[str, "BaseSuite"] = {}

    def initialize(self):
        """Register all suites"""
        self.register_suite(LatticeSuite())
        self.register_suite(DeltaSuite())
        self.register_suite(ImplicationSuite())
        self.register_suite(GroupsSuite())
        self.register_suite(RepresentationSuite())
        self.register_suite(GenerationSuite())

        logger.debug(f"Registered {len(self.suites)} suites")

    def register_suite(self, suite: "BaseSuite"):
        """Register a suite"""
        self.suites[suite.name] = suite

    def get_suite_definitions(self) -> List[Dict[str, Any]]:
        return [suite.get_definition() for suite in self.suites.values()]

    def run_suite(self, suite_name: str, config: RunConfig) -> VerificationReport:
        """Run a specific suite"""
        if suite_name not in self.suites:
            raise ValueError(f"Suite {suite_name} not found")
        return self.suites[suite_name].run(config)

    def run_all(self, config: RunConfig) -> List[VerificationReport]:
        return [suite.run(config) for suite in self.suites.values()]


class BaseSuite:
    """Base class for all suites"""

    name: str = "base_suite"
    description: str = "Base suite"

    def get_definition(self) -> Dict[str, Any]:
        return {"name": self.name, "description": self.description}

    def get_checks(self) -> List[Tuple[str, Check]]:
        raise NotImplementedError

    def run(self, config: RunConfig) -> VerificationReport:
        """Run every check against a fresh context"""
        context = SuiteContext(config)
        report = VerificationReport(suite=self.name)
        for check_name, check in self.get_checks():
            report.checks.append(self._run_check(check_name, check, context))
        logger.info(
            f"Suite {self.name} at Z_{config.modulus}^{config.indices}: "
            f"{report.passed} passed, {report.failed} failed, {report.skipped} skipped"
        )
        return report

    def _run_check(self, check_name: str, check: Check, context: SuiteContext) -> CheckResult:
        try:
            outcome = check(context)
        except CheckSkipped as e:
            return CheckResult(suite=self.name, name=check_name, status="skipped", detail=str(e))
        except BudgetExceededError as e:
            logger.warning(f"Skipping {self.name}.{check_name}: {e}")
            return CheckResult(suite=self.name, name=check_name, status="skipped", detail=str(e))
        except Exception as e:
            logger.error(f"Error running check {self.name}.{check_name}: {e}", exc_info=True)
            return CheckResult(suite=self.name, name=check_name, status="fail", detail=str(e))

        if not outcome.ok:
            logger.error(
                f"Check {self.name}.{check_name} failed: measured {outcome.measured}, "
                f"expected {outcome.expected}"
            )
        return CheckResult(
            suite=self.name,
            name=check_name,
            status="pass" if outcome.ok else "fail",
            measured=outcome.measured,
            expected=outcome.expected,
            tolerance=outcome.tolerance,
            detail=outcome.detail,
        )


class LatticeSuite(BaseSuite):
    """Order, lattice laws, atoms and coatoms, projections, unit scalars, cubic case"""

    name = "lattice"
    description = "Lattice laws of M, atomistic and coatomistic structure, cubic reduction"

    def get_checks(self) -> List[Tuple[str, Check]]:
        return [
            ("atom_count", self.atom_count),
            ("coatom_count", self.coatom_count),
            ("element_count", self.element_count),
            ("order_reflexive_antisymmetric", self.order_reflexive_antisymmetric),
            ("order_transitive", self.order_transitive),
            ("meet_join_commutative_idempotent_absorptive", self.meet_join_pair_laws),
            ("meet_join_associative", self.meet_join_associative),
            ("meet_is_infimum", self.meet_is_infimum),
            ("join_is_supremum", self.join_is_supremum),
            ("atoms_are_minimal", self.atoms_are_minimal),
            ("atomistic", self.atomistic),
            ("coatomistic", self.coatomistic),
            ("projection_reaches_upper_bounds", self.projection_reaches_upper_bounds),
            ("units_are_lattice_automorphisms", self.units_are_automorphisms),
            ("scalar_mul_well_defined", self.scalar_mul_well_defined),
            ("signed_sets_bijective", self.signed_sets_bijective),
            ("signed_sets_reverse_order", self.signed_sets_reverse_order),
        ]

    def atom_count(self, ctx: SuiteContext) -> Measurement:
        return Measurement.equal(len(ctx.atoms), ctx.symbols ** ctx.indices)

    def coatom_count(self, ctx: SuiteContext) -> Measurement:
        return Measurement.equal(len(ctx.coatoms), ctx.symbols * ctx.indices)

    def element_count(self, ctx: SuiteContext) -> Measurement:
        return Measurement.equal(len(ctx.elements), ctx.modulus.n ** ctx.indices)

    def order_reflexive_antisymmetric(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(
            ctx.pairs(ctx.with_bottom),
            lambda a, b: leq(a, a) and (a == b or not (leq(a, b) and leq(b, a))),
        )

    def order_transitive(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(
            ctx.triples(ctx.with_bottom),
            lambda a, b, c: not (leq(a, b) and leq(b, c)) or leq(a, c),
        )

    def meet_join_pair_laws(self, ctx: SuiteContext) -> Measurement:
        def laws(a: MclElement, b: MclElement) -> bool:
            return (
                meet(a, b) == meet(b, a)
                and join(a, b) == join(b, a)
                and meet(a, a) == a
                and join(a, a) == a
                and join(a, meet(a, b)) == a
                and meet(a, join(a, b)) == a
            )

        return exhaustive(ctx.pairs(ctx.with_bottom), laws)

    def meet_join_associative(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(
            ctx.triples(ctx.with_bottom),
            lambda a, b, c: meet(meet(a, b), c) == meet(a, meet(b, c))
            and join(join(a, b), c) == join(a, join(b, c)),
        )

    def meet_is_infimum(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(
            ctx.triples(ctx.with_bottom),
            lambda a, b, z: (leq(z, a) and leq(z, b)) == leq(z, meet(a, b)),
        )

    def join_is_supremum(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(
            ctx.triples(ctx.with_bottom),
            lambda a, b, z: (leq(a, z) and leq(b, z)) == leq(join(a, b), z),
        )

    def atoms_are_minimal(self, ctx: SuiteContext) -> Measurement:
        check_budget("element-atom pairs", len(ctx.elements) * len(ctx.atoms), ctx.config.budget)
        return exhaustive(
            itertools.product(ctx.elements, ctx.atoms),
            lambda x, a: not leq(x, a) or x == a,
        )

    def atomistic(self, ctx: SuiteContext) -> Measurement:
        budget = ctx.config.budget
        return exhaustive(
            ((m,) for m in ctx.elements),
            lambda m: join_all(atoms_below(m, budget=budget)) == m,
        )

    def coatomistic(self, ctx: SuiteContext) -> Measurement:
        def recovered(m: MclElement) -> bool:
            above = coatoms_above(m)
            bound = meet_all(above) if above else ctx.top
            return bound == m and len(above) == len(m.specified)

        return exhaustive(((m,) for m in ctx.elements), recovered)

    def projection_reaches_upper_bounds(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(
            ctx.comparable_pairs,
            lambda m, n: proj(n.sigma - m.sigma, m) == n,
        )

    def units_are_automorphisms(self, ctx: SuiteContext) -> Measurement:
        check_budget(
            "unit pairs", len(ctx.unit_values) * len(ctx.elements) ** 2, ctx.config.budget
        )

        def preserved(u: int, a: MclElement, b: MclElement) -> bool:
            ua, ub = scalar_mul(u, a), scalar_mul(u, b)
            if leq(a, b) != leq(ua, ub) or scalar_mul(u, join(a, b)) != join(ua, ub):
                return False
            m = meet(a, b)
            return meet(ua, ub).is_bottom if m.is_bottom else scalar_mul(u, m) == meet(ua, ub)

        cases = itertools.product(ctx.unit_values, ctx.elements, ctx.elements)
        return exhaustive(cases, preserved)

    def scalar_mul_well_defined(self, ctx: SuiteContext) -> Measurement:
        def agrees(u: int, m: MclElement) -> bool:
            vector = [u * v for v in ctx.random_representative(m)]
            return from_representative(ctx.modulus, vector, m.sigma) == scalar_mul(u, m)

        return exhaustive(itertools.product(ctx.unit_values, ctx.elements), agrees)

    def signed_sets_bijective(self, ctx: SuiteContext) -> Measurement:
        ctx.require_cubic()
        images = {to_signed_set(m) for m in ctx.elements}
        outcome = exhaustive(
            ((m,) for m in ctx.elements),
            lambda m: from_signed_set(*to_signed_set(m), ctx.indices) == m,
        )
        outcome.ok = outcome.ok and len(images) == len(ctx.elements)
        return outcome

    def signed_sets_reverse_order(self, ctx: SuiteContext) -> Measurement:
        ctx.require_cubic()
        return exhaustive(
            ctx.pairs(ctx.elements),
            lambda a, b: leq(a, b) == signed_set_contains(to_signed_set(a), to_signed_set(b)),
        )


class DeltaSuite(BaseSuite):
    """Properties of the weak complement on comparable pairs"""

    name = "delta"
    description = "Delta laws on every comparable pair and chain"

    def get_checks(self) -> List[Tuple[str, Check]]:
        return [
            ("delta_fixes_diagonal", self.fixes_diagonal),
            ("delta_stays_below", self.stays_below),
            ("delta_is_twice_b_minus_a", self.twice_b_minus_a),
            ("delta_is_involutive", self.involutive),
            ("delta_is_monotone_on_chains", self.monotone_on_chains),
            ("delta_fixed_iff_equal", self.fixed_iff_equal),
            ("delta_complements_strictly_below", self.complements_strictly_below),
            ("delta_commutes_with_units", self.commutes_with_units),
            ("delta_matches_signed_set_delta", self.matches_signed_set_delta),
        ]

    def fixes_diagonal(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(((a,) for a in ctx.elements), lambda a: delta(a, a) == a)

    def stays_below(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(ctx.comparable_pairs, lambda a, b: leq(delta(b, a), b))

    def twice_b_minus_a(self, ctx: SuiteContext) -> Measurement:
        n = ctx.modulus.n

        def formula(a: MclElement, b: MclElement) -> bool:
            expected = tuple(X if x == X else (2 * y - x) % n for x, y in zip(a.entries, b.entries))
            return delta(b, a).entries == expected

        return exhaustive(ctx.comparable_pairs, formula)

    def involutive(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(ctx.comparable_pairs, lambda a, b: delta(b, delta(b, a)) == a)

    def monotone_on_chains(self, ctx: SuiteContext) -> Measurement:
        check_budget("chains", len(ctx.elements) ** 3, ctx.config.budget)
        above: Dict[MclElement, List[MclElement]] = {}
        for a, b in ctx.comparable_pairs:
            above.setdefault(a, []).append(b)
        chains = ((a, b, c) for a, b in ctx.comparable_pairs for c in above[b])
        return exhaustive(chains, lambda a, b, c: leq(delta(c, a), delta(c, b)))

    def fixed_iff_equal(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(ctx.comparable_pairs, lambda a, b: (delta(b, a) == b) == (a == b))

    def complements_strictly_below(self, ctx: SuiteContext) -> Measurement:
        def complement(a: MclElement, b: MclElement) -> bool:
            if a == b:
                return True
            d = delta(b, a)
            return not compatible(d, a) and join(d, a) == b

        return exhaustive(ctx.comparable_pairs, complement)

    def commutes_with_units(self, ctx: SuiteContext) -> Measurement:
        cases = (
            (u, a, b) for u in ctx.unit_values for a, b in ctx.comparable_pairs
        )
        return exhaustive(
            cases,
            lambda u, a, b: scalar_mul(u, delta(b, a)) == delta(scalar_mul(u, b), scalar_mul(u, a)),
        )

    def matches_signed_set_delta(self, ctx: SuiteContext) -> Measurement:
        ctx.require_cubic()
        return exhaustive(
            ctx.comparable_pairs,
            lambda a, b: to_signed_set(delta(b, a))
            == signed_set_delta(to_signed_set(b), to_signed_set(a)),
        )


class ImplicationSuite(BaseSuite):
    """Implication-algebra axioms for both implications"""

    name = "implication"
    description = "Implication-algebra axioms, compatibility and well-definedness"

    def get_checks(self) -> List[Tuple[str, Check]]:
        return [
            ("filter_contraction", self.filter_contraction),
            ("filter_symmetry", self.filter_symmetry),
            ("filter_exchange", self.filter_exchange),
            ("implies_contraction", self.implies_contraction),
            ("implies_exchange", self.implies_exchange),
            ("implies_symmetry_iff_compatible", self.implies_symmetry_iff_compatible),
            ("implies_agrees_with_filter_on_compatible", self.implies_agrees_with_filter),
            ("implies_well_defined", self.implies_well_defined),
        ]

    # x -> y is written arrow(x, y), matching implies(b, a) = b -> a

    def filter_contraction(self, ctx: SuiteContext) -> Measurement:
        arrow = filter_implies
        return exhaustive(ctx.pairs(ctx.elements), lambda a, b: arrow(arrow(a, b), a) == a)

    def filter_symmetry(self, ctx: SuiteContext) -> Measurement:
        arrow = filter_implies
        return exhaustive(
            ctx.pairs(ctx.elements),
            lambda a, b: arrow(arrow(a, b), b) == arrow(arrow(b, a), a),
        )

    def filter_exchange(self, ctx: SuiteContext) -> Measurement:
        arrow = filter_implies
        return exhaustive(
            ctx.triples(ctx.elements),
            lambda a, b, c: arrow(a, arrow(b, c)) == arrow(b, arrow(a, c)),
        )

    def implies_contraction(self, ctx: SuiteContext) -> Measurement:
        arrow = implies
        return exhaustive(ctx.pairs(ctx.elements), lambda a, b: arrow(arrow(a, b), a) == a)

    def implies_exchange(self, ctx: SuiteContext) -> Measurement:
        arrow = implies
        return exhaustive(
            ctx.triples(ctx.elements),
            lambda a, b, c: arrow(a, arrow(b, c)) == arrow(b, arrow(a, c)),
        )

    def implies_symmetry_iff_compatible(self, ctx: SuiteContext) -> Measurement:
        arrow = implies
        return exhaustive(
            ctx.pairs(ctx.elements),
            lambda a, b: (arrow(arrow(a, b), b) == arrow(arrow(b, a), a)) == compatible(a, b),
        )

    def implies_agrees_with_filter(self, ctx: SuiteContext) -> Measurement:
        return exhaustive(
            ctx.pairs(ctx.elements),
            lambda a, b: not compatible(a, b) or implies(b, a) == filter_implies(b, a),
        )

    def implies_well_defined(self, ctx: SuiteContext) -> Measurement:
        everything = frozenset(range(ctx.indices))

        def from_any_representative(a: MclElement, b: MclElement) -> bool:
            vector = ctx.random_representative(a)
            free = a.sigma | (everything - b.sigma)
            return from_representative(ctx.modulus, vector, free) == implies(b, a)

        return exhaustive(ctx.pairs(ctx.elements), from_any_representative)


class GroupsSuite(BaseSuite):
    """Centralizers, the wreath-product automorphism group and its action on atoms"""

    name = "groups"
    description = "Centralizer orders and orbits, Aut(M) order, transitivity and center"

    def get_checks(self) -> List[Tuple[str, Check]]:
        return [
            ("centralizer_order_formula", self.centralizer_order_formula),
            ("centralizer_is_intersection", self.centralizer_is_intersection),
            ("centralizer_transitive_iff_prime", self.centralizer_transitive_iff_prime),
            ("aut_order_is_wreath_order", self.aut_order_is_wreath_order),
            ("aut_order_at_prime", self.aut_order_at_prime),
            ("unit_wreath_order", self.unit_wreath_order),
            ("unit_wreath_is_aut_iff_prime", self.unit_wreath_is_aut_iff_prime),
            ("atoms_transitive_iff_prime", self.atoms_transitive_iff_prime),
            ("wreath_action_is_homomorphism", self.wreath_action_is_homomorphism),
            ("wreath_preserves_atoms_and_coatoms", self.wreath_preserves_atoms_and_coatoms),
            ("wreath_commutes_with_units", self.wreath_commutes_with_units),
            ("center_is_global_units_iff_prime", self.center_is_global_units),
        ]

    def centralizer_order_formula(self, ctx: SuiteContext) -> Measurement:
        def matches(sigma: Perm) -> bool:
            found = centralizer_elements([sigma], sigma.degree, method="brute")
            return len(found) == centralizer_order_formula(cycle_type(sigma))

        cases = (
            (Perm(images),)
            for m in range(1, FORMULA_MAX_SYMBOLS + 1)
            for images in itertools.permutations(range(m))
        )
        return exhaustive(cases, matches)

    def centralizer_is_intersection(self, ctx: SuiteContext) -> Measurement:
        if ctx.symbols > settings.BRUTE_FORCE_MAX_SYMBOLS:
            raise CheckSkipped(f"single-unit centralizers on {ctx.symbols} symbols")
        common = None
        for g in aut_group_perms(ctx.modulus):
            if g.is_identity():
                continue
            single = set(centralizer_elements([g], ctx.symbols))
            common = single if common is None else common & single
        return Measurement.equal(len(common), ctx.centralizer.order,
                                 detail="equal sets" if common == set(ctx.centralizer.elements) else "sets differ")

    def centralizer_transitive_iff_prime(self, ctx: SuiteContext) -> Measurement:
        sizes = sorted((len(o) for o in orbits(ctx.centralizer, ctx.symbols)), reverse=True)
        transitive = is_transitive(ctx.centralizer, ctx.symbols)
        return Measurement(
            transitive == ctx.prime,
            measured=sizes,
            expected="transitive" if ctx.prime else "intransitive",
            detail=f"centralizer order {ctx.centralizer.order}",
        )

    def aut_order_is_wreath_order(self, ctx: SuiteContext) -> Measurement:
        return Measurement.equal(
            ctx.aut_action.order, wreath_order(ctx.centralizer.order, ctx.indices)
        )

    def aut_order_at_prime(self, ctx: SuiteContext) -> Measurement:
        ctx.require_prime()
        return Measurement.equal(ctx.aut_action.order, wreath_order(ctx.symbols, ctx.indices))

    def _unit_wreath_order(self, ctx: SuiteContext) -> int:
        gens = unit_wreath_generators(ctx.modulus, ctx.indices)
        return atom_action_group(gens, ctx.modulus, ctx.indices).enumerate().order

    def unit_wreath_order(self, ctx: SuiteContext) -> Measurement:
        phi = int(sympy_totient(ctx.modulus.n))
        return Measurement.equal(self._unit_wreath_order(ctx), wreath_order(phi, ctx.indices))

    def unit_wreath_is_aut_iff_prime(self, ctx: SuiteContext) -> Measurement:
        order = self._unit_wreath_order(ctx)
        return Measurement(
            (order == ctx.aut_action.order) == ctx.prime,
            measured=order,
            expected=ctx.aut_action.order if ctx.prime else f"< {ctx.aut_action.order}",
        )

    def atoms_transitive_iff_prime(self, ctx: SuiteContext) -> Measurement:
        group = atom_action_group(ctx.aut_generators, ctx.modulus, ctx.indices)
        sizes = sorted((len(o) for o in orbits(group, group.degree)), reverse=True)
        return Measurement(
            (len(sizes) == 1) == ctx.prime,
            measured=sizes,
            expected="transitive" if ctx.prime else "intransitive",
        )

    def wreath_action_is_homomorphism(self, ctx: SuiteContext) -> Measurement:
        cases = [
            (ctx.random_wreath(), ctx.random_wreath(), ctx.random_element())
            for _ in range(ctx.config.random_pairs)
        ]
        return exhaustive(
            cases,
            lambda w1, w2, m: wreath_act(w1 * w2, m) == wreath_act(w1, wreath_act(w2, m))
            and wreath_act(w1.inverse(), wreath_act(w1, m)) == m,
        )

    def wreath_preserves_atoms_and_coatoms(self, ctx: SuiteContext) -> Measurement:
        cases = itertools.product(ctx.aut_generators, ctx.atoms + ctx.coatoms)
        return exhaustive(
            cases,
            lambda w, m: wreath_act(w, m).is_atom == m.is_atom
            and wreath_act(w, m).is_coatom == m.is_coatom,
        )

    def wreath_commutes_with_units(self, ctx: SuiteContext) -> Measurement:
        check_budget(
            "wreath unit cases",
            len(ctx.aut_generators) * len(ctx.unit_values) * len(ctx.elements),
            ctx.config.budget,
        )
        cases = itertools.product(ctx.aut_generators, ctx.unit_values, ctx.elements)
        return exhaustive(
            cases,
            lambda w, u, m: wreath_act(w, scalar_mul(u, m)) == scalar_mul(u, wreath_act(w, m)),
        )

    def center_is_global_units(self, ctx: SuiteContext) -> Measurement:
        center = center_of_action(ctx.aut_generators, ctx.modulus, ctx.indices)
        global_units = PermGroup(
            center.degree, tuple(global_unit_action(ctx.modulus, ctx.indices))
        ).enumerate()
        same = set(center.elements) == set(global_units.elements)
        return Measurement(
            same == ctx.prime,
            measured=center.order,
            expected=global_units.order if ctx.prime else f"!= {global_units.order}",
        )


class RepresentationSuite(BaseSuite):
    """Generalized Pauli matrices, the permutation representation and matrix units"""

    name = "representation"
    description = "Unitarity, Fourier diagonalization, rho homomorphism, matrix units, commutants"

    def get_checks(self) -> List[Tuple[str, Check]]:
        return [
            ("pauli_matrices_unitary", self.pauli_unitary),
            ("fourier_diagonalizes_shift", self.fourier_diagonalizes_shift),
            ("rho_is_unitary_homomorphism", self.rho_homomorphism),
            ("rho_conjugates_coatom_projections", self.rho_coatom_equivariance),
            ("local_factors_commute", self.local_factors_commute),
            ("natural_cycle_is_shift_adjoint", self.natural_cycle_is_shift_adjoint),
            ("primitive_root_turns_units_into_shift", self.primitive_root_shift),
            ("coatom_projections_resolve_identity", self.coatom_resolution),
            ("matrix_unit_relations", self.matrix_unit_relations),
            ("projection_meet_of_fourier_pair", self.projection_meet_of_fourier_pair),
            ("element_projections_embed_order", self.element_projections_embed_order),
            ("coatom_algebra_is_maximal_abelian", self.coatom_algebra_maximal_abelian),
            ("matrix_unit_commutant_dimension", self.matrix_unit_commutant),
            ("index_algebra_commutant_iff_prime", self.index_algebra_commutant),
            ("clock_in_coatom_algebra", self.clock_in_coatom_algebra),
            ("shift_in_fourier_algebra", self.shift_in_fourier_algebra),
            ("centralizer_in_shift_algebra", self.centralizer_in_shift_algebra),
            ("centralizer_matches_fourier_algebra_iff_prime", self.centralizer_matches_fourier),
        ]

    def pauli_unitary(self, ctx: SuiteContext) -> Measurement:
        d = ctx.symbols
        error = max(unitarity_error(m) for m in (shift_matrix(d), clock_matrix(d), qft_matrix(d)))
        return Measurement.within(error, UNITARY_TOLERANCE)

    def fourier_diagonalizes_shift(self, ctx: SuiteContext) -> Measurement:
        error = 0.0
        for d in sorted(set(PAULI_SIZES) | {ctx.symbols}):
            u = qft_matrix(d)
            error = max(error, _norm(u.conj().T @ shift_matrix(d) @ u - clock_matrix(d)))
        return Measurement.within(error, ctx.tolerance)

    def rho_homomorphism(self, ctx: SuiteContext) -> Measurement:
        ctx.dimension
        error = 0.0
        for _ in range(ctx.config.random_pairs):
            w1, w2 = ctx.random_wreath(), ctx.random_wreath()
            r1 = rho_wreath(w1, ctx.modulus, ctx.indices)
            r2 = rho_wreath(w2, ctx.modulus, ctx.indices)
            product = rho_wreath(w1 * w2, ctx.modulus, ctx.indices)
            error = max(error, _norm(product - r1 @ r2), unitarity_error(product))
        return Measurement.within(error, settings.EXACT_TOLERANCE)

    def rho_coatom_equivariance(self, ctx: SuiteContext) -> Measurement:
        ctx.dimension
        error = 0.0
        for w in ctx.aut_generators:
            r = rho_wreath(w, ctx.modulus, ctx.indices)
            for c in ctx.coatoms:
                moved = r @ proj_coatom(c) @ r.conj().T
                error = max(error, _norm(moved - proj_coatom(wreath_act(w, c))))
        return Measurement.within(error, settings.EXACT_TOLERANCE)

    def local_factors_commute(self, ctx: SuiteContext) -> Measurement:
        if ctx.indices < 2:
            raise CheckSkipped("needs at least two indices")
        ctx.dimension
        error = 0.0
        gens = ctx.centralizer.generators
        for i, j in itertools.combinations(range(ctx.indices), 2):
            for g, h in itertools.product(gens, gens):
                a = rho_at_index(g, i, ctx.modulus, ctx.indices)
                b = rho_at_index(h, j, ctx.modulus, ctx.indices)
                error = max(error, _norm(a @ b - b @ a))
        return Measurement.within(error, settings.EXACT_TOLERANCE)

    def natural_cycle_is_shift_adjoint(self, ctx: SuiteContext) -> Measurement:
        d = ctx.symbols
        cycle = Perm.from_cycles(d, tuple(range(d)))
        local = rho_at_index(cycle, 0, ctx.modulus, 1)
        return Measurement.within(_norm(local - shift_matrix(d).conj().T), settings.EXACT_TOLERANCE)

    def primitive_root_shift(self, ctx: SuiteContext) -> Measurement:
        ctx.require_prime()
        g = int(primitive_root(ctx.modulus.n))
        local = rho_at_index(
            mult_perm(g, ctx.modulus), 0, ctx.modulus, 1, Labeling.PRIMITIVE_ROOT
        )
        return Measurement.within(
            _norm(local - shift_matrix(ctx.symbols).T), settings.EXACT_TOLERANCE,
            detail=f"primitive root {g}",
        )

    def coatom_resolution(self, ctx: SuiteContext) -> Measurement:
        identity = np.eye(ctx.dimension)
        error = 0.0
        for alpha in range(ctx.indices):
            at_alpha = [
                p for c, p in zip(ctx.coatoms, ctx.coatom_projections) if c.entries[alpha] != X
            ]
            error = max(error, _norm(sum(at_alpha) - identity))
        return Measurement.within(error, settings.EXACT_TOLERANCE)

    def matrix_unit_relations(self, ctx: SuiteContext) -> Measurement:
        identity = np.eye(ctx.dimension)
        d = ctx.symbols
        error = 0.0
        for alpha in range(ctx.indices):
            e = matrix_units(alpha, ctx.modulus, ctx.indices)
            error = max(error, _norm(sum(e[(i, i)] for i in range(1, d + 1)) - identity))
            for (i, j), eij in e.items():
                error = max(error, _norm(eij.conj().T - e[(j, i)]))
                for k in range(1, d + 1):
                    for l in range(1, d + 1):
                        expected = e[(i, l)] if j == k else 0.0
                        error = max(error, _norm(eij @ e[(k, l)] - expected))
        return Measurement.within(error, settings.EXACT_TOLERANCE)

    def projection_meet_of_fourier_pair(self, ctx: SuiteContext) -> Measurement:
        d = ctx.symbols
        error = 0.0
        pairs = zip(ctx.coatoms, ctx.coatom_projections)
        for (c, p), (c2, q) in itertools.product(
            list(pairs), list(zip(ctx.coatoms, ctx.conjugated_projections))
        ):
            if c.specified != c2.specified:
                continue
            error = max(error, _norm(p @ q @ p - p / d), _norm(projection_meet(p, q)))
        return Measurement.within(error, ctx.tolerance)

    def element_projections_embed_order(self, ctx: SuiteContext) -> Measurement:
        ctx.dimension
        cases = list(ctx.pairs(ctx.with_bottom))
        projections = {m: proj_element(m) for m in ctx.with_bottom}

        def embeds(m: MclElement, n: MclElement) -> bool:
            p, q = projections[m], projections[n]
            below = _norm(p @ q - p) < ctx.tolerance
            met = _norm(projection_meet(p, q) - projections[meet(m, n)]) < ctx.tolerance
            return below == leq(m, n) and met

        return exhaustive(cases, embeds)

    def coatom_algebra_maximal_abelian(self, ctx: SuiteContext) -> Measurement:
        commutant = commutant_dimension(ctx.coatom_projections, ctx.tolerance)
        return Measurement(
            commutant == len(ctx.coatom_span) == ctx.dimension,
            measured=commutant,
            expected=ctx.dimension,
            detail=f"algebra dimension {len(ctx.coatom_span)}",
        )

    def matrix_unit_commutant(self, ctx: SuiteContext) -> Measurement:
        units_at_0 = list(matrix_units(0, ctx.modulus, ctx.indices).values())
        return Measurement.equal(
            commutant_dimension(units_at_0, ctx.tolerance), ctx.symbols ** (2 * (ctx.indices - 1))
        )

    def index_algebra_commutant(self, ctx: SuiteContext) -> Measurement:
        gens = [
            rho_at_index(g, 0, ctx.modulus, ctx.indices) for g in ctx.centralizer.generators
        ] + [p for c, p in zip(ctx.coatoms, ctx.coatom_projections) if c.entries[0] != X]
        measured = commutant_dimension(gens, ctx.tolerance)
        full = ctx.symbols ** (2 * (ctx.indices - 1))
        return Measurement(
            (measured == full) == ctx.prime,
            measured=measured,
            expected=full if ctx.prime else f"> {full}",
        )

    def _local_span(self, ctx: SuiteContext, op: np.ndarray) -> SpanBasis:
        return span_closure(
            [local_operator(op, i, ctx.modulus, ctx.indices) for i in range(ctx.indices)],
            ctx.tolerance,
        )

    def clock_in_coatom_algebra(self, ctx: SuiteContext) -> Measurement:
        clock = clock_matrix(ctx.symbols)
        return exhaustive(
            ((i,) for i in range(ctx.indices)),
            lambda i: ctx.coatom_span.contains(
                local_operator(clock, i, ctx.modulus, ctx.indices), ctx.tolerance
            ),
        )

    def shift_in_fourier_algebra(self, ctx: SuiteContext) -> Measurement:
        shift = shift_matrix(ctx.symbols)
        return exhaustive(
            ((i,) for i in range(ctx.indices)),
            lambda i: ctx.conjugated_span.contains(
                local_operator(shift, i, ctx.modulus, ctx.indices), ctx.tolerance
            ),
        )

    def centralizer_in_shift_algebra(self, ctx: SuiteContext) -> Measurement:
        ctx.require_prime()
        shifts = self._local_span(ctx, shift_matrix(ctx.symbols))
        return exhaustive(
            ((m,) for m in ctx.centralizer_matrices),
            lambda m: shifts.contains(m, ctx.tolerance),
        )

    def centralizer_matches_fourier(self, ctx: SuiteContext) -> Measurement:
        span = span_closure(ctx.centralizer_matrices, ctx.tolerance)
        same = _mutually_contained(span, ctx.conjugated_span, ctx.tolerance)
        return Measurement(
            same == ctx.prime,
            measured=len(span),
            expected=len(ctx.conjugated_span),
            detail=f"{ctx.labeling.value} labeling, mutual containment {same}",
        )


class GenerationSuite(BaseSuite):
    """Which coatom families generate the full matrix algebra"""

    name = "generation"
    description = "Span closures of the Fourier pair and of the centralizer with coatom projections"

    def get_checks(self) -> List[Tuple[str, Check]]:
        return [
            ("coatom_span_is_diagonal", self.coatom_span_is_diagonal),
            ("fourier_pair_generates", self.fourier_pair_generates),
            ("centralizer_pair_generates_iff_prime", self.centralizer_pair_generates),
        ]

    def coatom_span_is_diagonal(self, ctx: SuiteContext) -> Measurement:
        return Measurement.equal(len(ctx.coatom_span), ctx.dimension)

    def fourier_pair_generates(self, ctx: SuiteContext) -> Measurement:
        span = span_closure(ctx.conjugated_projections + ctx.coatom_projections, ctx.tolerance)
        return Measurement.equal(len(span), ctx.dimension ** 2)

    def centralizer_pair_generates(self, ctx: SuiteContext) -> Measurement:
        gens = [
            rho_at_index(g, i, ctx.modulus, ctx.indices)
            for i in range(ctx.indices)
            for g in ctx.centralizer.generators
        ]
        span = span_closure(gens + ctx.coatom_projections, ctx.tolerance)
        full = ctx.dimension ** 2
        return Measurement(
            (len(span) == full) == ctx.prime,
            measured=len(span),
            expected=full if ctx.prime else f"< {full}",
        )
