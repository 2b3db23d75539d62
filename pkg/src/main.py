"""
Critical Multi-Cubic Lattice Toolkit - Command Line Entry Point

JSON results go to standard output, diagnostics to standard error.
Exit codes: 0 success, 1 failed verification or budget refusal, 2 usage error.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from pydantic import ValidationError

from src.algebra.groups import (
    aut_group_of_M,
    atom_action_group,
    center_of_action,
    centralizer_of_units,
    orbits,
    wreath_order,
)
from src.algebra.lattice import MclElement, atoms, coatoms, elements, join, meet
from src.algebra.representation import (
    clock_matrix,
    coatom_projections,
    fourier_transform,
    hilbert_dimension,
    local_operator,
    matrix_units,
    shift_matrix,
)
from src.algebra.ring import Modulus
from src.config import settings
from src.errors import BudgetExceededError, MclError, check_budget
from src.schemas import ElementPayload, MatrixPayload, OpsTable, VerificationReport, WreathPayload
from src.utils.logger import setup_logging
from src.verification import RunConfig, SuiteRegistry

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

OPS_TABLE_MAX_ELEMENTS = 1000

SUITES = ["lattice", "delta", "implication", "groups", "representation", "generation"]
EMITTABLE = ["shift", "clock", "qft", "coatom-projections", "matrix-units"]
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcl",
        description="Critical multi-cubic lattices, their automorphism groups and unitary representations",
    )
    parser.add_argument("--modulus", type=int, default=settings.MODULUS, help="odd ring size 2k+1 >= 3")
    parser.add_argument("--indices", type=int, default=settings.INDICES, help="size of the index set")
    parser.add_argument("--tolerance", type=float, default=settings.TOLERANCE)
    parser.add_argument("--budget", type=int, default=settings.ENUMERATION_BUDGET,
                        help="largest enumeration allowed")
    parser.add_argument("--seed", type=int, default=settings.SEED)
    parser.add_argument(
        "--log-level",
        default=None,
        type=str.upper,
        choices=LOG_LEVELS,
        help="overrides MCL_LOG_LEVEL",
    )

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("atoms", help="list every atom")
    commands.add_parser("coatoms", help="list every coatom")
    commands.add_parser("ops-table", help="meet and join tables of the whole lattice")

    aut = commands.add_parser("aut", help="automorphism group of M acting on atoms")
    aut.add_argument("--order", action="store_true")
    aut.add_argument("--transitive", action="store_true")
    aut.add_argument("--center", action="store_true")

    emit = commands.add_parser("emit", help="emit representation matrices")
    emit.add_argument("what", choices=EMITTABLE)
    emit.add_argument("--index", type=int, default=0, help="tensor factor for matrix-units")

    verify = commands.add_parser("verify", help="run verification suites")
    verify.add_argument("suite", choices=["all"] + SUITES)
    return parser


def _dump(payload) -> str:
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


def _elements_json(listing: List[MclElement]) -> str:
    return _dump([ElementPayload.from_element(m).model_dump(exclude_none=True) for m in listing])


def cmd_lattice(config: RunConfig, subcommand: str) -> int:
    modulus = Modulus(config.modulus)
    if subcommand == "atoms":
        print(_elements_json(atoms(modulus, config.indices, budget=config.budget)))
    elif subcommand == "coatoms":
        print(_elements_json(coatoms(modulus, config.indices, budget=config.budget)))
    else:
        budget = min(config.budget, OPS_TABLE_MAX_ELEMENTS)
        listing = elements(modulus, config.indices, budget=budget)
        listing.append(MclElement.bottom(modulus, config.indices))
        position = {m: i for i, m in enumerate(listing)}
        table = OpsTable(
            elements=[ElementPayload.from_element(m) for m in listing],
            meet=[[position[meet(a, b)] for b in listing] for a in listing],
            join=[[position[join(a, b)] for b in listing] for a in listing],
        )
        print(_dump(table.model_dump(exclude_none=True)))
    return EXIT_OK


def cmd_aut(config: RunConfig, order: bool, transitive: bool, center: bool) -> int:
    modulus = Modulus(config.modulus)
    check_budget("atoms", modulus.symbols ** config.indices, config.budget)
    everything = not (order or transitive or center)
    centralizer = centralizer_of_units(modulus)
    generators = aut_group_of_M(modulus, config.indices)
    action = atom_action_group(generators, modulus, config.indices, budget=config.budget)

    report = {
        "modulus": modulus.n,
        "indices": config.indices,
        "centralizer_order": centralizer.order,
        "generators": [WreathPayload.from_wreath(w).model_dump() for w in generators],
    }
    if order or everything:
        report["order"] = action.enumerate().order
        report["wreath_order"] = wreath_order(centralizer.order, config.indices)
    if transitive or everything:
        atom_orbits = orbits(action, action.degree)
        report["transitive"] = len(atom_orbits) == 1
        report["orbit_sizes"] = sorted((len(o) for o in atom_orbits), reverse=True)
    if center or everything:
        report["center_order"] = center_of_action(generators, modulus, config.indices).order
    print(_dump(report))
    return EXIT_OK


def cmd_rep(config: RunConfig, what: str, index: int = 0) -> int:
    modulus = Modulus(config.modulus)
    check_budget(
        "hilbert space dimension",
        hilbert_dimension(modulus, config.indices),
        settings.MAX_MATRIX_DIM,
    )
    d = modulus.symbols
    if what == "shift":
        named = [(f"X_{i}", local_operator(shift_matrix(d), i, modulus, config.indices))
                 for i in range(config.indices)]
    elif what == "clock":
        named = [(f"D_{i}", local_operator(clock_matrix(d), i, modulus, config.indices))
                 for i in range(config.indices)]
    elif what == "qft":
        named = [("U_H", fourier_transform(modulus, config.indices))]
    elif what == "coatom-projections":
        named = [(f"p{c}", p) for c, p in zip(coatoms(modulus, config.indices),
                                               coatom_projections(modulus, config.indices))]
    else:
        units = matrix_units(index, modulus, config.indices)
        named = [(f"e[{i},{j}]@{index}", e) for (i, j), e in units.items()]
    payload = [MatrixPayload.from_array(m, name=name).model_dump() for name, m in named]
    print(_dump(payload))
    return EXIT_OK


def _print_report(report: VerificationReport):
    for check in report.checks:
        print(check.model_dump_json(exclude_none=True))
    print(_dump(report.summary()))


def cmd_verify(config: RunConfig, suite: str) -> int:
    registry = SuiteRegistry()
    registry.initialize()
    if suite == "all":
        reports = registry.run_all(config)
    else:
        reports = [registry.run_suite(suite, config)]
    for report in reports:
        _print_report(report)
    if len(reports) > 1:
        overall = VerificationReport(suite="all", checks=[c for r in reports for c in r.checks])
        print(_dump(overall.summary()))
    failed = any(r.status == "fail" for r in reports)
    return EXIT_FAILURE if failed else EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)

    try:
        config = RunConfig(
            modulus=args.modulus,
            indices=args.indices,
            tolerance=args.tolerance,
            budget=args.budget,
            seed=args.seed,
        )
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_USAGE

    logger.info(f"Running {args.command} at Z_{config.modulus}^{config.indices}")
    try:
        if args.command in ("atoms", "coatoms", "ops-table"):
            return cmd_lattice(config, args.command)
        if args.command == "aut":
            return cmd_aut(config, args.order, args.transitive, args.center)
        if args.command == "emit":
            return cmd_rep(config, args.what, args.index)
        return cmd_verify(config, args.suite)
    except BudgetExceededError as e:
        logger.error(f"Refused: {e}")
        return EXIT_FAILURE
    except MclError as e:
        logger.error(f"Invalid request: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
