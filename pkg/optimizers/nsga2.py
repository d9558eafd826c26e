"""
NSGA-II baseline: Pareto levels with crowding-distance truncation, sharing the
dispatch encoding, variation and repair with the theta-DEA.
"""

import logging

import numpy as np

from optimizers.archive import ParetoArchive
from optimizers.problem import DispatchProblem
from optimizers.sorting import crowding_distance, fast_nondominated_sort
from optimizers.variation import vary

logger = logging.getLogger(__name__)

LOG_EVERY = 10


def crowding_selection(combined, target_size):
    """Survivors by (Pareto rank, crowding distance).

    Returns:
        (Population, keys) where keys rows are (rank, -crowding) for the tournament
    """
    F = combined.F
    chosen, ranks, crowd = [], [], []
    for rank, front in enumerate(fast_nondominated_sort(F)):
        distance = crowding_distance(F[front])
        if len(chosen) + len(front) <= target_size:
            chosen.extend(front.tolist())
            ranks.extend([rank] * len(front))
            crowd.extend(distance.tolist())
        else:
            order = np.argsort(-distance, kind='stable')[:target_size - len(chosen)]
            chosen.extend(front[order].tolist())
            ranks.extend([rank] * len(order))
            crowd.extend(distance[order].tolist())
        if len(chosen) >= target_size:
            break
    keys = np.column_stack([np.array(ranks, dtype=float), -np.array(crowd, dtype=float)])
    return combined.take(chosen), keys


def run_nsga2(case, config, interval=0, p_lower=None, p_upper=None, callback=None, rng=None):
    """Optimize one interval with NSGA-II; same contract as run_theta_dea."""
    config.validate()
    problem = DispatchProblem.from_config(case, config, interval, p_lower, p_upper)
    problem.check_capacity()
    rng = np.random.default_rng(config.seed) if rng is None else rng
    size = config.population_size
    logger.info("NSGA-II start: case %r interval %d, N=%d, %d iterations, seed %d",
                case.name, interval, size, config.max_iterations, config.seed)

    population, keys = crowding_selection(problem.initial_population(size, rng), size)
    if callback:
        callback(0, population)

    for iteration in range(1, config.max_iterations + 1):
        offspring = problem.evaluate_population(
            vary(population.X, keys, problem.lower, problem.upper, rng, config.variation))
        population, keys = crowding_selection(population.merge(population, offspring), size)
        if callback:
            callback(iteration, population)
        if iteration % LOG_EVERY == 0:
            F = population.F
            logger.info("NSGA-II iteration %d: best cost %.4f, best emission %.6f",
                        iteration, F[:, 0].min(), F[:, 1].min())

    archive = ParetoArchive.from_population(population, size, None, config.max_iterations, case, 'nsga-ii')
    if not archive.all_feasible:
        logger.warning("Archive contains %d infeasible member(s)",
                       sum(not s.feasible for s in archive.solutions))
    logger.info("NSGA-II done: %d archive members", len(archive))
    return archive
