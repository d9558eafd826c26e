"""
Theta-dominance: clustering around reference lines and penalty-based fitness.

For a normalized objective vector F and a direction lambda, Dis1 is the length of
the projection of F on the line through the origin and lambda, Dis2 the
perpendicular distance of F from that line. Fitness is Dis1 + theta * Dis2.
"""

import numpy as np


def line_distances(f_norm, directions):
    """Projection length and perpendicular distance of every point to every line.

    Args:
        f_norm: (n, m) normalized objectives
        directions: (k, m) nonzero direction rows

    Returns:
        (dis1, dis2), both (n, k)
    """
    f = np.atleast_2d(np.asarray(f_norm, dtype=float))
    units = np.atleast_2d(np.asarray(directions, dtype=float))
    units = units / np.linalg.norm(units, axis=1, keepdims=True)
    dis1 = f @ units.T
    foot = dis1[:, :, None] * units[None, :, :]
    dis2 = np.linalg.norm(f[:, None, :] - foot, axis=2)
    return dis1, dis2


def theta_fitness(f_norm, direction, theta):
    """Dis1 + theta * Dis2 of one normalized vector against one direction."""
    dis1, dis2 = line_distances(f_norm, direction)
    return float(dis1[0, 0] + theta * dis2[0, 0])


def cluster_to_reference(f_norm, refs):
    """Index of the reference line nearest (in Dis2) to each solution.

    Ties go to the lowest reference index.
    """
    _, dis2 = line_distances(f_norm, refs.points)
    return np.argmin(dis2, axis=1)


def cluster_fitness(f_norm, refs, assignment, theta, axis_theta=None):
    """Fitness of each solution against its own cluster's direction.

    Args:
        axis_theta: penalty used instead of theta for directions on an objective
            axis; None keeps theta everywhere
    """
    dis1, dis2 = line_distances(f_norm, refs.points)
    rows = np.arange(len(assignment))
    penalty = np.full(len(refs), float(theta))
    if axis_theta is not None:
        penalty[refs.axis_mask] = axis_theta
    return dis1[rows, assignment] + penalty[assignment] * dis2[rows, assignment]


def theta_dominates(x1, x2, assignment, refs, theta):
    """True iff x1 and x2 share a cluster and x1 has strictly lower fitness there.

    Args:
        x1, x2: normalized objective vectors
        assignment: (cluster of x1, cluster of x2)
        refs: ReferencePointSet
        theta: penalty parameter
    """
    j1, j2 = assignment
    if j1 != j2:
        return False
    direction = refs.points[j1]
    return theta_fitness(x1, direction, theta) < theta_fitness(x2, direction, theta)


def theta_nondominated_sort(fitness, assignment):
    """Theta-nondomination levels.

    Inside a cluster fitness is totally ordered, so a solution's level is the
    number of distinct smaller fitness values in its cluster.

    Returns:
        list of index arrays, best level first
    """
    fitness = np.asarray(fitness, dtype=float)
    assignment = np.asarray(assignment)
    rank = np.zeros(len(fitness), dtype=int)
    for cluster in np.unique(assignment):
        members = np.nonzero(assignment == cluster)[0]
        _, dense = np.unique(fitness[members], return_inverse=True)
        rank[members] = dense.ravel()
    if len(rank) == 0:
        return []
    return [np.nonzero(rank == level)[0] for level in range(rank.max() + 1)]


def theta_levels(fitness, assignment):
    """Level number of every solution (0 = best), from theta_nondominated_sort."""
    rank = np.zeros(len(fitness), dtype=int)
    for level, members in enumerate(theta_nondominated_sort(fitness, assignment)):
        rank[members] = level
    return rank
