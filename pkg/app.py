#!/usr/bin/env python3
"""
Combined heat and power economic emission dispatch
Commands: solve a case, compare optimizers over paired runs, validate a case file
"""

import argparse
import logging
import os
import sys

from constants import (ALGORITHMS, DEFAULT_RUNS, EXIT_INFEASIBLE_CASE, EXIT_INFEASIBLE_RESULT, EXIT_OK,
                       EXIT_PARSE_ERROR, EXIT_RUNTIME_ERROR, EXIT_VALIDATION_ERROR)
from decision.bcs import select_bcs
from managers.archive_io import save_archive
from managers.case_files import load_case_file
from managers.reports import (ExperimentManifest, format_bcs_table, resolve_output_dir, write_bcs_report,
                              write_front_plot_data, write_interval_plot_data, write_metric_report)
from managers.settings import RunConfig, SettingsManager, apply_overrides
from metrics.harness import multi_run_report
from models.errors import (CaseParseError, CaseValidationError, ConfigError, DispatchError,
                           InfeasibleCaseError, SchemaVersionError)
from optimizers.dynamic import run_algorithm, solve_schedule
from optimizers.problem import DispatchProblem
from utils import polygon

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def build_parser():
    parser = argparse.ArgumentParser(
        prog='app.py', description='Combined heat and power economic emission dispatch')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    commands = parser.add_subparsers(dest='command', required=True)

    def run_flags(sub):
        sub.add_argument('case', help='case file path or shipped case name (case1, case2)')
        sub.add_argument('--config', help='RunConfig JSON file (flags override it)')
        sub.add_argument('--seed', type=int)
        sub.add_argument('--pop', type=int, dest='population_size')
        sub.add_argument('--iters', type=int, dest='max_iterations')
        sub.add_argument('--theta', type=float)
        sub.add_argument('--out', help='output directory (default: $CHPEED_OUTPUT_DIR or results)')

    solve = commands.add_parser('solve', help='optimize a case and report the compromise solutions')
    run_flags(solve)
    solve.add_argument('--algorithm', choices=ALGORITHMS)
    solve.set_defaults(handler=cmd_solve)

    compare = commands.add_parser('compare', help='IGD/Spread comparison over paired runs')
    run_flags(compare)
    compare.add_argument('--runs', type=int, default=DEFAULT_RUNS)
    compare.set_defaults(handler=cmd_compare)

    validate = commands.add_parser('validate', help='check a case file and print diagnostics')
    validate.add_argument('case', help='case file path or shipped case name')
    validate.set_defaults(handler=cmd_validate)
    return parser


def effective_config(args):
    """Defaults < --config file < command-line flags."""
    config = SettingsManager(args.config).load() if args.config else RunConfig()
    return apply_overrides(
        config,
        seed=args.seed,
        population_size=args.population_size,
        max_iterations=args.max_iterations,
        theta=args.theta,
        algorithm=getattr(args, 'algorithm', None),
    )


def cmd_solve(args):
    """Optimize, pick the BCSs and write archive, report, plot data and manifest."""
    case_file = load_case_file(args.case)
    case = case_file.case
    config = effective_config(args)
    out = resolve_output_dir(args.out)
    os.makedirs(out, exist_ok=True)
    artifacts = []

    if case.is_dynamic:
        chains = solve_schedule(case, config)
        archive = chains[0].archives[0]
        report = select_bcs(archive, config)
        for chain in chains:
            artifacts.append(save_archive(chain.solutions, os.path.join(out, f"schedule_bcs{chain.label}.csv"),
                                          case))
        artifacts.append(write_interval_plot_data(chains, os.path.join(out, 'intervals.csv')))
        all_feasible = all(chain.feasible for chain in chains) and archive.all_feasible
    else:
        archive = run_algorithm(case, config)
        report = select_bcs(archive, config)
        all_feasible = archive.all_feasible

    artifacts.append(save_archive(archive, os.path.join(out, 'archive.csv'), case))
    artifacts.append(write_bcs_report(report, case, os.path.join(out, 'bcs_report.txt')))
    artifacts.append(write_front_plot_data(archive, os.path.join(out, 'front.csv')))

    manifest = ExperimentManifest('solve', args.case, config.to_dict(), out, [], all_feasible)
    manifest.artifacts = artifacts + [os.path.join(out, 'manifest.json')]
    manifest.save()

    print(format_bcs_table(report, case))
    if case.is_dynamic:
        for chain in chains:
            print(f"BCS {chain.label} schedule: total cost {chain.total_cost:.4f} $, "
                  f"total emission {chain.total_emission:.6f} kg, ramp {'ok' if chain.ramp.feasible else 'VIOLATED'}")
    if not all_feasible:
        print("Result contains infeasible solutions", file=sys.stderr)
        return EXIT_INFEASIBLE_RESULT
    return EXIT_OK


def cmd_compare(args):
    """Paired multi-run IGD/Spread comparison of every algorithm."""
    case = load_case_file(args.case).case
    config = effective_config(args)
    if args.runs < 1:
        raise ConfigError(f"runs: must be >= 1, got {args.runs}")
    out = resolve_output_dir(args.out)
    report = multi_run_report(case, config, args.runs)
    artifacts = write_metric_report(report, out)
    manifest = ExperimentManifest('compare', args.case, config.to_dict(), out, [])
    manifest.artifacts = artifacts + [os.path.join(out, 'manifest.json')]
    manifest.save()
    print(report.summary_table().to_string(index=False))
    return EXIT_OK


def describe_case(case):
    """Diagnostic lines for a validated case; the second value is False if demand is infeasible."""
    lines = [f"Case {case.name!r}: N_p={case.n_p} N_c={case.n_c} N_h={case.n_h} N_T={case.n_intervals}"]
    feasible = True
    for t in range(case.n_intervals):
        try:
            DispatchProblem(case, interval=t).check_capacity()
            verdict = 'demand feasible'
        except InfeasibleCaseError as e:
            verdict = f"INFEASIBLE: {e}"
            feasible = False
        p_low, p_high = case.power_capacity()
        h_low, h_high = case.heat_capacity()
        lines.append(f"  interval {t}: P_D={case.power_demand(t):g} MW in [{p_low:g}, {p_high:g}], "
                     f"H_D={case.heat_demand(t):g} MWth in [{h_low:g}, {h_high:g}] -> {verdict}")
    numbers = case.unit_numbers[1]
    for unit, number in zip(case.chp_units, numbers):
        p_low, p_high = unit.power_bounds
        h_low, h_high = unit.heat_bounds
        lines.append(f"  CHP unit {number}: FOR {len(unit.vertices)} vertices, P [{p_low:g}, {p_high:g}] MW, "
                     f"H [{h_low:g}, {h_high:g}] MWth, area {polygon.signed_area(unit.vertices):g}")
    lines.append(f"  loss model: {'present' if case.loss.present else 'absent'}")
    return lines, feasible


def cmd_validate(args):
    case = load_case_file(args.case).case
    lines, feasible = describe_case(case)
    print('\n'.join(lines))
    return EXIT_OK if feasible else EXIT_INFEASIBLE_CASE


def main(argv=None):
    """Command-line entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)

    try:
        return args.handler(args)
    except (CaseParseError, SchemaVersionError) as e:
        print(f"Parse error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except CaseValidationError as e:
        print("Validation failed:", file=sys.stderr)
        for problem in e.errors:
            print(f"  {problem}", file=sys.stderr)
        return EXIT_VALIDATION_ERROR
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_VALIDATION_ERROR
    except InfeasibleCaseError as e:
        print(f"Infeasible case: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE_CASE
    except (DispatchError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR


if __name__ == '__main__':
    sys.exit(main())
