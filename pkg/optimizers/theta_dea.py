"""
Theta-dominance based evolutionary algorithm for the two-objective dispatch.

Each generation: tournament/SBX/mutation offspring are repaired and merged
with the parents, Pareto levels are gathered until they cover the population
size, the gathered set is normalized, clustered around the reference lines,
sorted into theta-levels, and whole levels are taken while they fit. The
boundary level is shuffled with the run generator and truncated.
"""

from dataclasses import dataclass
import logging

import numpy as np

from optimizers.archive import ParetoArchive
from optimizers.normalization import NormalizationAnchors, normalize
from optimizers.problem import DispatchProblem
from optimizers.reference_points import das_dennis_points
from optimizers.sorting import fast_nondominated_sort
from optimizers.theta_dominance import cluster_fitness, cluster_to_reference, theta_levels
from optimizers.variation import vary

logger = logging.getLogger(__name__)

LOG_EVERY = 10


@dataclass
class SelectionResult:
    """Survivors of one environmental selection and their tournament data."""

    population: object
    levels: np.ndarray
    fitness: np.ndarray
    assignment: np.ndarray
    anchors: NormalizationAnchors

    @property
    def keys(self):
        return np.column_stack([self.levels, self.fitness])


def gather_pareto_levels(objectives, target_size):
    """Indices of whole Pareto levels, best first, until at least target_size are collected."""
    gathered = []
    for front in fast_nondominated_sort(objectives):
        gathered.extend(front.tolist())
        if len(gathered) >= target_size:
            break
    return np.array(gathered, dtype=int)


def _fill(levels, target_size, rng):
    """Take whole levels while they fit, then a shuffled part of the boundary level."""
    chosen = []
    for members in levels:
        if len(chosen) + len(members) <= target_size:
            chosen.extend(members.tolist())
            if len(chosen) == target_size:
                break
            continue
        shuffled = members[rng.permutation(len(members))]
        chosen.extend(shuffled[:target_size - len(chosen)].tolist())
        break
    return np.array(chosen, dtype=int)


def environmental_selection(combined, refs, theta, target_size, rng, anchors=None, axis_theta=None):
    """Select target_size survivors from the merged parent/offspring population.

    Args:
        combined: Population with at least target_size members
        refs: ReferencePointSet
        theta: penalty parameter
        target_size: population size N
        rng: numpy Generator used for the boundary shuffle
        anchors: NormalizationAnchors carried from earlier generations, or None
        axis_theta: penalty for axis directions, None for plain theta

    Returns:
        SelectionResult
    """
    F = combined.F
    gathered = gather_pareto_levels(F, target_size)
    first = fast_nondominated_sort(F[gathered])[0]
    if anchors is None:
        anchors = NormalizationAnchors.from_objectives(F[gathered], first)
    else:
        anchors.update(F[gathered], first)

    f_norm, _ = normalize(F[gathered], anchors)
    assignment = cluster_to_reference(f_norm, refs)
    fitness = cluster_fitness(f_norm, refs, assignment, theta, axis_theta)
    rank = theta_levels(fitness, assignment)

    levels = [np.nonzero(rank == level)[0] for level in range(rank.max() + 1)]
    levels = [members for members in levels if len(members)]

    picked = _fill(levels, target_size, rng)
    return SelectionResult(
        population=combined.take(gathered[picked]),
        levels=rank[picked],
        fitness=fitness[picked],
        assignment=assignment[picked],
        anchors=anchors,
    )


def run_theta_dea(case, config, interval=0, p_lower=None, p_upper=None, callback=None, rng=None):
    """Optimize one interval of a case and return the final nondominated archive.

    Args:
        case: DispatchCase
        config: RunConfig
        interval: demand interval
        p_lower, p_upper: optional power-only bounds (ramp windows)
        callback: called as callback(iteration, population) after every generation
        rng: numpy Generator; seeded from config.seed when None

    Raises:
        InfeasibleCaseError: demand outside aggregate capacity (before iteration 1)
    """
    config.validate()
    problem = DispatchProblem.from_config(case, config, interval, p_lower, p_upper)
    problem.check_capacity()
    rng = np.random.default_rng(config.seed) if rng is None else rng
    refs = das_dennis_points(config.divisions, 2)
    size = config.population_size
    logger.info("theta-DEA start: case %r interval %d, N=%d, %d directions, %d iterations, seed %d",
                case.name, interval, size, len(refs), config.max_iterations, config.seed)

    population = problem.initial_population(size, rng)
    selection = environmental_selection(population, refs, config.theta, size, rng, None, config.axis_theta)
    population = selection.population
    if callback:
        callback(0, population)

    for iteration in range(1, config.max_iterations + 1):
        offspring_X = vary(population.X, selection.keys, problem.lower, problem.upper, rng, config.variation)
        offspring = problem.evaluate_population(offspring_X)
        combined = population.merge(population, offspring)
        selection = environmental_selection(combined, refs, config.theta, size, rng, selection.anchors,
                                            config.axis_theta)
        population = selection.population
        if callback:
            callback(iteration, population)
        if iteration % LOG_EVERY == 0:
            F = population.F
            logger.info("theta-DEA iteration %d: best cost %.4f, best emission %.6f",
                        iteration, F[:, 0].min(), F[:, 1].min())

    archive = ParetoArchive.from_population(population, size, selection.anchors, config.max_iterations,
                                            case, 'theta-dea')
    if not archive.all_feasible:
        logger.warning("Archive contains %d infeasible member(s)",
                       sum(not s.feasible for s in archive.solutions))
    logger.info("theta-DEA done: %d archive members", len(archive))
    return archive
