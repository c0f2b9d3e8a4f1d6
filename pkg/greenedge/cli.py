"""

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

Command Line Interface for GreenEdge.

Usage:
    greenedge generate --seed 7 --out scenario.yaml
    greenedge solve scenario.yaml --variant M0 --out solution.yaml --report costs.csv
    greenedge sweep scenario.yaml --param psi --grid 0.5,1,1.5,2 --variants M0 --out psi.csv
    greenedge compare scenario.yaml --variants M0,M1,M2,M3 --out variants.csv
    greenedge export-mps scenario.yaml --variant M0 --out model.mps
    greenedge validate scenario.yaml solution.yaml --tol 1e-6

Exit status: 0 on success, 1 on an infeasible or limited solve or a failed
validation, 2 on usage or I/O errors. Progress messages go to stderr;
stdout carries data only when no --out is given.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from . import __version__
from .analysis.csv_writer import CsvWriteError, format_csv, write_csv, write_manifest
from .analysis.sweep import (
    SWEEP_PARAMS,
    SweepError,
    SweepRow,
    SweepSpec,
    SweepTable,
    compare_variants,
    run_sweep,
    solve_scenario,
)
from .core.document import dump_scenario, load_scenario, save_scenario
from .core.generator import GenSpec, generate_scenario
from .core.validator import ScenarioError
from .model.builder import ModelOptions, Variant, build_model
from .model.checker import validate_solution
from .model.document import SolutionDocument, dump_solution, load_solution, save_solution
from .model.milp import ModelError
from .solver.bnb import BnbConfig
from .solver.lp import SolverError
from .solver.mps import MpsWriteError, mps_text, write_mps
from .utils.file_utils import dump_yaml

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Raised for bad input or unwritable output; all map to EXIT_USAGE
INPUT_ERRORS = (
    ScenarioError, ModelError, SweepError, CsvWriteError, MpsWriteError, OSError, ValueError,
)


def _ok(message: str) -> None:
    print(f"[OK] {message}", file=sys.stderr)


def _error(message: str) -> None:
    print(f"[ERROR] {message}", file=sys.stderr)


def _grid(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}") from None


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_argument_group("model")
    group.add_argument("--printed-load-sign", action="store_true",
                       help="Use the printed sign of the load power term")
    group.add_argument("--printed-allocation-bound", action="store_true",
                       help="Bound x by b*lambda instead of b*lambda/alpha")
    group.add_argument("--no-curtailment", action="store_true",
                       help="Forbid spilling renewable output")
    group.add_argument("--free-final-level", action="store_true",
                       help="Leave the post-horizon battery level unbounded above")


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_argument_group("solver")
    group.add_argument("--node-limit", type=int, default=100000,
                       help="Maximum LP relaxations (default: 100000)")
    group.add_argument("--gap", type=float, default=1e-6,
                       help="Relative optimality gap (default: 1e-6)")
    group.add_argument("--int-tol", type=float, default=1e-6,
                       help="Integrality tolerance (default: 1e-6)")
    group.add_argument("--feas-tol", type=float, default=1e-7,
                       help="Primal feasibility tolerance (default: 1e-7)")
    group.add_argument("--opt-tol", type=float, default=1e-7,
                       help="Reduced-cost optimality tolerance (default: 1e-7)")


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser."""
    parser = argparse.ArgumentParser(
        prog="greenedge",
        description="Edge-cloud workload allocation and energy dispatch optimizer",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  Generate a default-setting scenario:
    greenedge generate --seed 7 --out s.yaml

  Solve it and re-check the solution:
    greenedge solve s.yaml --variant M0 --out sol.yaml
    greenedge validate s.yaml sol.yaml

  Sweep the sell-back ratio:
    greenedge sweep s.yaml --param zeta --grid 0,0.4,0.8 --variants M0 --out zeta.csv

Copyright (C) 2025-2030 GreenEdge Developers. All Rights Reserved.
""",
    )
    parser.add_argument("--version", "-V", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="Log more (-v info incl. node log, -vv debug)")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    gen = subparsers.add_parser("generate", help="Generate a scenario")
    gen.add_argument("--seed", type=int, default=0, help="Generator seed (default: 0)")
    gen.add_argument("--areas", type=int, help="Number of areas (default: 10)")
    gen.add_argument("--ecs", type=int, help="Number of edge clouds (default: 8)")
    gen.add_argument("--periods", type=int, help="Number of periods (default: 12)")
    gen.add_argument("-o", "--out", help="Output file (stdout if not specified)")

    solve = subparsers.add_parser("solve", help="Solve a scenario")
    solve.add_argument("scenario", help="Scenario document")
    solve.add_argument("--variant", default="M0", help="M0, M1, M2 or M3 (default: M0)")
    solve.add_argument("-o", "--out", help="Solution document (stdout if not specified)")
    solve.add_argument("--report", help="Write the cost report row as CSV")
    _add_model_flags(solve)
    _add_solver_flags(solve)

    sweep = subparsers.add_parser("sweep", help="Run a sensitivity sweep")
    sweep.add_argument("scenario", help="Base scenario document")
    sweep.add_argument("--param", required=True, choices=SWEEP_PARAMS, help="Swept parameter")
    sweep.add_argument("--grid", required=True, type=_grid, help="Comma-separated values")
    sweep.add_argument("--param2", choices=SWEEP_PARAMS, help="Second swept parameter")
    sweep.add_argument("--grid2", type=_grid, default=[], help="Values of the second parameter")
    sweep.add_argument("--variants", default="M0", help="Comma-separated variants (default: M0)")
    sweep.add_argument("--seed", type=int,
                       help="Generator seed (required for num_areas/num_ecs and --seed-policy reseed)")
    sweep.add_argument("--seed-policy", choices=("fixed", "reseed"), default="fixed",
                       help="Keep the base scenario or regenerate it per point (default: fixed)")
    sweep.add_argument("--jobs", type=int, default=1, help="Worker processes (default: 1)")
    sweep.add_argument("--manifest", help="Write a YAML manifest of the sweep")
    sweep.add_argument("--timing", action="store_true", help="Record wall time in wall_ms")
    sweep.add_argument("-o", "--out", help="CSV output (stdout if not specified)")
    _add_model_flags(sweep)
    _add_solver_flags(sweep)

    compare = subparsers.add_parser("compare", help="Compare variants on one scenario")
    compare.add_argument("scenario", help="Scenario document")
    compare.add_argument("--variants", default="M0,M1,M2,M3",
                         help="Comma-separated variants (default: M0,M1,M2,M3)")
    compare.add_argument("--jobs", type=int, default=1, help="Worker processes (default: 1)")
    compare.add_argument("-o", "--out", help="CSV output (stdout if not specified)")
    _add_model_flags(compare)
    _add_solver_flags(compare)

    export = subparsers.add_parser("export-mps", help="Write the model as fixed-format MPS")
    export.add_argument("scenario", help="Scenario document")
    export.add_argument("--variant", default="M0", help="M0, M1, M2 or M3 (default: M0)")
    export.add_argument("-o", "--out", help="MPS file (stdout if not specified)")
    _add_model_flags(export)

    val = subparsers.add_parser("validate", help="Re-check a solution against its scenario")
    val.add_argument("scenario", help="Scenario document")
    val.add_argument("solution", help="Solution document")
    val.add_argument("--tol", type=float, default=1e-6, help="Residual tolerance (default: 1e-6)")

    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def model_options(args) -> ModelOptions:
    return ModelOptions(
        load_term="printed" if args.printed_load_sign else "elastic",
        allocation_bound="printed" if args.printed_allocation_bound else "scaled",
        curtailment=not args.no_curtailment,
        bound_final_level=not args.free_final_level,
    )


def bnb_config(args) -> BnbConfig:
    try:
        return BnbConfig(
            integrality_tol=args.int_tol,
            relative_gap_tol=args.gap,
            node_limit=args.node_limit,
            feasibility_tol=args.feas_tol,
            optimality_tol=args.opt_tol,
        )
    except SolverError as e:
        raise ValueError(e.message) from e


def _emit_table(table: SweepTable, out: Optional[str]) -> None:
    if out:
        write_csv(table, out)
        _ok(f"{len(table)} rows written to {out}")
    else:
        sys.stdout.write(format_csv(table))


def _table_status(table: SweepTable) -> int:
    failed = [r for r in table.rows if r.status != "optimal"]
    for r in failed:
        _error(f"{r.variant} at {r.param}: {r.status}")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_generate(args) -> int:
    """Handle generate command."""
    spec = GenSpec().with_overrides(
        seed=args.seed, num_areas=args.areas, num_ecs=args.ecs, num_periods=args.periods,
    )
    scenario = generate_scenario(spec)
    if args.out:
        save_scenario(scenario, args.out)
        _ok(f"scenario (seed {args.seed}) written to {args.out}")
    else:
        sys.stdout.write(dump_scenario(scenario))
    return EXIT_OK


def cmd_solve(args) -> int:
    """Handle solve command."""
    scenario = load_scenario(args.scenario)
    variant = Variant.parse(args.variant)
    options = model_options(args)
    outcome = solve_scenario(scenario, variant, options, bnb_config(args))
    solution, stats = outcome.solution, outcome.stats

    document = SolutionDocument(solution, variant, options, outcome.costs, stats.to_dict())
    if args.out:
        save_solution(document, args.out)
        _ok(f"{variant} {solution.status.value}, objective {solution.objective:.10g}, "
            f"{stats.nodes_explored} nodes; solution written to {args.out}")
    else:
        sys.stdout.write(dump_solution(document))

    if args.report:
        row = SweepRow.from_solve(scenario.sellback_ratio, None, variant, solution, stats,
                                  outcome.costs, record_timing=False)
        write_csv(SweepTable(param="zeta", rows=[row]), args.report)
        _ok(f"cost report written to {args.report}")

    if not solution.is_optimal:
        _error(f"solve ended {solution.status.value}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_sweep(args) -> int:
    """Handle sweep command."""
    base = load_scenario(args.scenario)
    gen_spec = GenSpec(seed=args.seed) if args.seed is not None else None
    spec = SweepSpec(
        base=base,
        param=args.param,
        grid=args.grid,
        variants=Variant.parse_list(args.variants),
        gen_spec=gen_spec,
        seed_policy=args.seed_policy,
        secondary=args.param2,
        secondary_grid=args.grid2,
        options=model_options(args),
        config=bnb_config(args),
        jobs=args.jobs,
        record_timing=args.timing,
    )
    table = run_sweep(spec)
    _emit_table(table, args.out)
    if args.manifest:
        write_manifest(args.manifest, spec, base, outputs=[args.out] if args.out else None)
        _ok(f"manifest written to {args.manifest}")
    return _table_status(table)


def cmd_compare(args) -> int:
    """Handle compare command."""
    scenario = load_scenario(args.scenario)
    table = compare_variants(
        scenario,
        Variant.parse_list(args.variants),
        options=model_options(args),
        config=bnb_config(args),
        jobs=args.jobs,
    )
    _emit_table(table, args.out)
    return _table_status(table)


def cmd_export_mps(args) -> int:
    """Handle export-mps command."""
    scenario = load_scenario(args.scenario)
    model = build_model(scenario, Variant.parse(args.variant), model_options(args))
    if args.out:
        names = write_mps(model, args.out)
        _ok(f"{model!r} written to {args.out} (names in {names})")
    else:
        sys.stdout.write(mps_text(model))
    return EXIT_OK


def cmd_validate(args) -> int:
    """Handle validate command."""
    scenario = load_scenario(args.scenario)
    document = load_solution(args.solution)
    report = validate_solution(scenario, document.variant, document.solution,
                               tol=args.tol, options=document.options)
    sys.stdout.write(dump_yaml(report.to_dict(), flow_style=False))
    if report.passed:
        _ok(f"all residuals <= {args.tol:g} (max {report.max_residual:.3e})")
        return EXIT_OK
    for issue in report.issues.errors:
        _error(f"{issue.path}: {issue.message}")
    return EXIT_FAILED


COMMANDS = {
    "generate": cmd_generate,
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "export-mps": cmd_export_mps,
    "validate": cmd_validate,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv and dispatch to the verb's handler.

    Returns:
        Exit status (0 ok, 1 infeasible/limit/failed validation, 2 usage or I/O error)
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except INPUT_ERRORS as e:
        _error(getattr(e, "message", None) or str(e))
        return EXIT_USAGE
    except SolverError as e:
        _error(e.message)
        return EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
