"""
Nondominated archive of evaluated dispatch solutions.
"""

import logging

import numpy as np

from optimizers.sorting import crowding_distance, dominates, nondominated_mask

logger = logging.getLogger(__name__)


class ParetoArchive:
    """Mutually nondominated solutions (compared on penalized objectives).

    Attributes:
        solutions: list of DispatchSolution
        X: decision vectors row-aligned with solutions (None when not tracked)
        anchors: NormalizationAnchors at the time the archive was built
        iteration: iteration count reached by the run
        capacity: maximum size (population size of the run)
    """

    def __init__(self, capacity, anchors=None, iteration=0, case=None, algorithm=''):
        self.capacity = capacity
        self.anchors = anchors
        self.iteration = iteration
        self.case = case
        self.algorithm = algorithm
        self.solutions = []
        self.X = []

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    @property
    def objectives(self):
        """Raw (cost, emission) rows."""
        return np.array([s.objectives for s in self.solutions]).reshape(len(self.solutions), 2)

    @property
    def fitness(self):
        return np.array([s.fitness for s in self.solutions]).reshape(len(self.solutions), 2)

    @property
    def all_feasible(self):
        return all(s.feasible for s in self.solutions)

    def insert(self, solution, x=None):
        """Add a solution unless an equal or dominating member exists.

        Members the newcomer dominates are removed. When the archive grows past
        capacity the most crowded member is dropped.

        Returns:
            True if the solution was added
        """
        f = solution.fitness
        for member in self.solutions:
            if dominates(member.fitness, f) or np.array_equal(member.fitness, f):
                return False
        keep = [i for i, member in enumerate(self.solutions) if not dominates(f, member.fitness)]
        self.solutions = [self.solutions[i] for i in keep] + [solution]
        self.X = [self.X[i] for i in keep] + [None if x is None else np.asarray(x, dtype=float)]
        if len(self.solutions) > self.capacity:
            crowd = crowding_distance(self.fitness)
            drop = int(np.argmin(crowd))
            del self.solutions[drop]
            del self.X[drop]
        return True

    def check_nondominated(self):
        """True iff no member dominates another."""
        f = self.fitness
        return all(not dominates(f[i], f[j]) for i in range(len(f)) for j in range(len(f)) if i != j)

    def sorted_by_cost(self):
        order = np.argsort([s.cost for s in self.solutions], kind='stable')
        return [self.solutions[i] for i in order]

    def extreme_solutions(self):
        """(minimum-cost member, minimum-emission member)."""
        if not self.solutions:
            return None, None
        cheapest = min(self.solutions, key=lambda s: (s.cost, s.emission))
        cleanest = min(self.solutions, key=lambda s: (s.emission, s.cost))
        return cheapest, cleanest

    @classmethod
    def from_population(cls, population, capacity, anchors=None, iteration=0, case=None, algorithm=''):
        """Archive of the nondominated members of a population.

        When any member is feasible only feasible members are considered.
        """
        archive = cls(capacity, anchors, iteration, case, algorithm)
        feasible = np.array([s.feasible for s in population.solutions], dtype=bool)
        pool = np.nonzero(feasible)[0] if feasible.any() else np.arange(len(population))
        if not feasible.any() and len(population):
            logger.warning("No feasible member in the final population, archiving penalized solutions")
        mask = nondominated_mask(population.F[pool])
        for i in pool[mask]:
            archive.insert(population.solutions[i], population.X[i])
        return archive
