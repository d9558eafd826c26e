"""
Multi-run comparison of optimizers on one case with paired seeds.
"""

from dataclasses import dataclass, field, replace
import logging

import numpy as np
import pandas as pd

from constants import ALGORITHMS, DEFAULT_RUNS
from models.errors import DispatchError, ParameterError
from metrics.indicators import front_extremes, igd, pooled_reference_front, spread_details
from optimizers.dynamic import run_algorithm

logger = logging.getLogger(__name__)


def paired_seeds(master_seed, n_runs):
    """n_runs deterministic seeds derived from the master seed, shared by all algorithms."""
    state = np.random.SeedSequence(master_seed).generate_state(n_runs)
    return [int(s) for s in state]


@dataclass
class MetricReport:
    """Per-run IGD and Spread of every algorithm plus the pooled reference front."""

    algorithms: list
    seeds: list
    igd: dict = field(default_factory=dict)
    spread: dict = field(default_factory=dict)
    spread_degenerate: dict = field(default_factory=dict)
    archive_sizes: dict = field(default_factory=dict)
    reference_front: np.ndarray = None

    def aggregates(self, algorithm):
        """{'IGD': (average, best, worst), 'Spread': (...)}; best is the minimum."""
        out = {}
        for name, values in (('IGD', self.igd[algorithm]), ('Spread', self.spread[algorithm])):
            values = np.asarray(values, dtype=float)
            out[name] = (float(values.mean()), float(values.min()), float(values.max()))
        return out

    def summary_table(self):
        """One row per (algorithm, metric) with average/best/worst columns."""
        rows = []
        for algorithm in self.algorithms:
            for metric, (average, best, worst) in self.aggregates(algorithm).items():
                rows.append({'algorithm': algorithm, 'metric': metric, 'average': average,
                             'best': best, 'worst': worst, 'runs': len(self.seeds)})
        return pd.DataFrame(rows, columns=['algorithm', 'metric', 'average', 'best', 'worst', 'runs'])

    def runs_table(self):
        rows = []
        for algorithm in self.algorithms:
            for run, seed in enumerate(self.seeds):
                rows.append({
                    'algorithm': algorithm, 'run': run, 'seed': seed,
                    'igd': self.igd[algorithm][run], 'spread': self.spread[algorithm][run],
                    'spread_degenerate': self.spread_degenerate[algorithm][run],
                    'archive_size': self.archive_sizes[algorithm][run],
                })
        return pd.DataFrame(rows, columns=['algorithm', 'run', 'seed', 'igd', 'spread',
                                           'spread_degenerate', 'archive_size'])


def multi_run_report(case, config, n_runs=DEFAULT_RUNS, algorithms=ALGORITHMS, interval=0):
    """Run every algorithm n_runs times and score the fronts against their pooled front.

    Args:
        case: DispatchCase (dynamic cases are compared on `interval`)
        config: base RunConfig; algorithm and seed are replaced per run
        n_runs: runs per algorithm
        algorithms: names from constants.ALGORITHMS
        interval: demand interval to optimize

    Returns:
        MetricReport

    Raises:
        ParameterError: n_runs < 1 or no algorithms
        DispatchError: a run failed (its algorithm and seed are logged)
    """
    if n_runs < 1:
        raise ParameterError(f"n_runs must be >= 1, got {n_runs}")
    if not algorithms:
        raise ParameterError("at least one algorithm is required")
    seeds = paired_seeds(config.seed, n_runs)
    fronts = {algorithm: [] for algorithm in algorithms}
    for algorithm in algorithms:
        for run, seed in enumerate(seeds):
            run_config = replace(config, algorithm=algorithm, seed=seed)
            try:
                archive = run_algorithm(case, run_config, interval=interval)
            except DispatchError:
                logger.error("%s run %d failed (seed %d)", algorithm, run, seed)
                raise
            fronts[algorithm].append(archive.objectives)
            logger.info("%s run %d/%d (seed %d): %d archive members", algorithm, run + 1, n_runs, seed,
                        len(archive))

    reference = pooled_reference_front([f for runs in fronts.values() for f in runs])
    extremes = front_extremes(reference)
    report = MetricReport(list(algorithms), seeds, reference_front=reference)
    for algorithm in algorithms:
        report.igd[algorithm] = [igd(reference, f) for f in fronts[algorithm]]
        details = [spread_details(f, extremes) if len(f) >= 2 else (1.0, True) for f in fronts[algorithm]]
        report.spread[algorithm] = [value for value, _ in details]
        report.spread_degenerate[algorithm] = [flag for _, flag in details]
        report.archive_sizes[algorithm] = [len(f) for f in fronts[algorithm]]
    return report
