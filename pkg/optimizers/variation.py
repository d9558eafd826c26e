"""
Real-coded variation: binary tournament, bounded SBX and polynomial mutation.
"""

import numpy as np

from constants import PM_ETA, SBX_ETA, SBX_PROBABILITY


def binary_tournament(keys, n_select, rng):
    """Pick n_select winners of random pairwise contests.

    Args:
        keys: (n, k) array compared lexicographically, smaller wins
        n_select: number of winners
        rng: numpy Generator

    Returns:
        index array of winners; a tie goes to the first contestant
    """
    keys = np.asarray(keys, dtype=float).reshape(len(keys), -1)
    a = rng.integers(0, len(keys), size=n_select)
    b = rng.integers(0, len(keys), size=n_select)
    winners = a.copy()
    for i, (x, y) in enumerate(zip(a, b)):
        for kx, ky in zip(keys[x], keys[y]):
            if kx != ky:
                winners[i] = x if kx < ky else y
                break
    return winners


def sbx_crossover(parent1, parent2, lower, upper, rng, eta=SBX_ETA, probability=SBX_PROBABILITY):
    """Bounded simulated binary crossover of two parents.

    Each variable is recombined with probability 0.5 when the pair crosses; the
    spread factor is truncated so both children stay inside [lower, upper].

    Returns:
        (child1, child2)
    """
    p1 = np.asarray(parent1, dtype=float)
    p2 = np.asarray(parent2, dtype=float)
    c1, c2 = p1.copy(), p2.copy()
    n = len(p1)
    if n == 0 or rng.random() > probability:
        return c1, c2

    cross = (rng.random(n) <= 0.5) & (np.abs(p1 - p2) > 1e-14) & (upper > lower)
    u = rng.random(n)
    swap = rng.random(n) <= 0.5
    for i in np.nonzero(cross)[0]:
        y1, y2 = min(p1[i], p2[i]), max(p1[i], p2[i])
        lo, hi = lower[i], upper[i]
        span = y2 - y1

        beta = 1.0 + 2.0 * (y1 - lo) / span
        child_lo = y1 + y2 - _spread_factor(beta, eta, u[i]) * span
        beta = 1.0 + 2.0 * (hi - y2) / span
        child_hi = y1 + y2 + _spread_factor(beta, eta, u[i]) * span

        child_lo = min(max(0.5 * child_lo, lo), hi)
        child_hi = min(max(0.5 * child_hi, lo), hi)
        if swap[i]:
            child_lo, child_hi = child_hi, child_lo
        c1[i], c2[i] = child_lo, child_hi
    return c1, c2


def _spread_factor(beta, eta, u):
    alpha = 2.0 - beta ** -(eta + 1.0)
    if u <= 1.0 / alpha:
        return (u * alpha) ** (1.0 / (eta + 1.0))
    return (1.0 / (2.0 - u * alpha)) ** (1.0 / (eta + 1.0))


def polynomial_mutation(x, lower, upper, rng, eta=PM_ETA, probability=None):
    """Bounded polynomial mutation; probability None means 1 / n_variables."""
    y = np.asarray(x, dtype=float).copy()
    n = len(y)
    if n == 0:
        return y
    if probability is None:
        probability = 1.0 / n
    mutate = (rng.random(n) < probability) & (upper > lower)
    r = rng.random(n)
    power = 1.0 / (eta + 1.0)
    for i in np.nonzero(mutate)[0]:
        lo, hi = lower[i], upper[i]
        span = hi - lo
        delta1 = (y[i] - lo) / span
        delta2 = (hi - y[i]) / span
        if r[i] <= 0.5:
            val = 2.0 * r[i] + (1.0 - 2.0 * r[i]) * (1.0 - delta1) ** (eta + 1.0)
            deltaq = val ** power - 1.0
        else:
            val = 2.0 * (1.0 - r[i]) + 2.0 * (r[i] - 0.5) * (1.0 - delta2) ** (eta + 1.0)
            deltaq = 1.0 - val ** power
        y[i] = min(max(y[i] + deltaq * span, lo), hi)
    return y


def vary(parents_X, selection_keys, lower, upper, rng, variation):
    """Offspring decision vectors from tournament-selected parents.

    Args:
        parents_X: (n, d) parent decision vectors, n even
        selection_keys: (n, k) tournament keys, smaller is better
        lower, upper: variable bounds
        rng: numpy Generator
        variation: VariationSettings

    Returns:
        (n, d) offspring clipped to the bounds; repair happens in DispatchProblem
    """
    parents_X = np.asarray(parents_X, dtype=float)
    n = len(parents_X)
    mating = binary_tournament(selection_keys, n, rng)
    children = np.empty_like(parents_X)
    for k in range(0, n - 1, 2):
        c1, c2 = sbx_crossover(parents_X[mating[k]], parents_X[mating[k + 1]], lower, upper, rng,
                               variation.eta_crossover, variation.p_crossover)
        children[k] = polynomial_mutation(c1, lower, upper, rng, variation.eta_mutation, variation.p_mutation)
        children[k + 1] = polynomial_mutation(c2, lower, upper, rng, variation.eta_mutation,
                                              variation.p_mutation)
    if n % 2:
        children[-1] = polynomial_mutation(parents_X[mating[-1]], lower, upper, rng,
                                           variation.eta_mutation, variation.p_mutation)
    return np.clip(children, lower, upper)
