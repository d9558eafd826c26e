"""
Multi-interval (dynamic) dispatch.

Intervals are solved in time order. Chain k keeps the k-th best compromise
solution of every interval, and interval t of chain k is optimized with
power-only bounds narrowed to the ramp window around chain k's choice at t-1.
"""

from dataclasses import dataclass, field
import logging

import numpy as np

from decision.bcs import select_bcs
from models.ramp import check_ramp, ramp_window
from optimizers.nsga2 import run_nsga2
from optimizers.theta_dea import run_theta_dea

logger = logging.getLogger(__name__)

RUNNERS = {
    'theta-dea': run_theta_dea,
    'nsga-ii': run_nsga2,
}


def run_algorithm(case, config, **kwargs):
    """Run the optimizer named by config.algorithm."""
    return RUNNERS[config.algorithm](case, config, **kwargs)


@dataclass
class ScheduleChain:
    """Per-interval choices of one BCS label and the ramp check of the sequence."""

    label: int
    solutions: list = field(default_factory=list)
    archives: list = field(default_factory=list)
    ramp: object = None

    @property
    def costs(self):
        return np.array([s.cost for s in self.solutions])

    @property
    def emissions(self):
        return np.array([s.emission for s in self.solutions])

    @property
    def total_cost(self):
        return float(self.costs.sum())

    @property
    def total_emission(self):
        return float(self.emissions.sum())

    @property
    def feasible(self):
        return all(s.feasible for s in self.solutions) and (self.ramp is None or self.ramp.feasible)


def _pick(report, label):
    """BCS with the given 1-based label, or the last one when fewer clusters exist."""
    clusters = report.clusters
    return clusters[min(label, len(clusters)) - 1].best.solution


def solve_schedule(case, config, n_chains=2):
    """Solve every interval of a dynamic case.

    Args:
        case: DispatchCase with ramp data on every power-only unit
        config: RunConfig
        n_chains: number of BCS labels followed through time

    Returns:
        list of ScheduleChain, label 1 first

    Raises:
        InfeasibleCaseError: an interval's demand cannot be met inside its ramp window
    """
    seeds = np.random.SeedSequence(config.seed).spawn(case.n_intervals * n_chains)
    chains = [ScheduleChain(label) for label in range(1, n_chains + 1)]

    first = run_algorithm(case, config, interval=0, rng=np.random.default_rng(seeds[0]))
    report = select_bcs(first, config)
    for chain in chains:
        chain.archives.append(first)
        chain.solutions.append(_pick(report, chain.label))

    for t in range(1, case.n_intervals):
        for k, chain in enumerate(chains):
            lower, upper = ramp_window(case, chain.solutions[-1].vars)
            archive = run_algorithm(case, config, interval=t, p_lower=lower, p_upper=upper,
                                    rng=np.random.default_rng(seeds[t * n_chains + k]))
            chain.archives.append(archive)
            chain.solutions.append(_pick(select_bcs(archive, config), chain.label))
        logger.info("Interval %d/%d solved", t + 1, case.n_intervals)

    for chain in chains:
        chain.ramp = check_ramp(case, [s.vars for s in chain.solutions])
        if not chain.ramp.feasible:
            logger.warning("Chain %d violates ramp limits by up to %.3g MW", chain.label, chain.ramp.worst)
    return chains
