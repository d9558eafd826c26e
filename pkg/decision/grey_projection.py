"""
Grey relation projection ranking of dispatch schemes.
"""

import logging

import numpy as np

from constants import GRP_RESOLUTION
from models.errors import ParameterError

logger = logging.getLogger(__name__)


def standardize_matrix(schemes):
    """Turn minimized objective columns into benefit columns in [0, 1].

    x' = (max - x) / (max - min) per column; a constant column becomes all 1.

    Returns:
        (standardized matrix, per-column degenerate flags)
    """
    x = np.atleast_2d(np.asarray(schemes, dtype=float))
    high = x.max(axis=0)
    span = high - x.min(axis=0)
    degenerate = span <= 0
    std = np.ones_like(x)
    ok = ~degenerate
    std[:, ok] = (high[ok] - x[:, ok]) / span[ok]
    if degenerate.any():
        logger.debug("Constant objective column(s) %s standardized to 1", np.nonzero(degenerate)[0].tolist())
    return std, degenerate


def _coefficients(delta, resolution):
    d_min, d_max = float(delta.min()), float(delta.max())
    if d_max == 0:
        return np.ones_like(delta)
    return (d_min + resolution * d_max) / (delta + resolution * d_max)


def grey_relation_coefficients(std, resolution=GRP_RESOLUTION):
    """Deng grey relational coefficients against the positive and negative ideal schemes.

    Returns:
        (grc_plus, grc_minus)
    """
    std = np.atleast_2d(np.asarray(std, dtype=float))
    delta_plus = np.abs(std - std.max(axis=0))
    delta_minus = np.abs(std - std.min(axis=0))
    return _coefficients(delta_plus, resolution), _coefficients(delta_minus, resolution)


def relative_projection(grc_plus, grc_minus, weights=None):
    """Relative projection RP = Prj+ / (Prj+ + Prj-) of every scheme.

    Prj = sum_i Grc_i * r_i^2 / sqrt(sum_i r_i^2).

    Args:
        weights: per-objective r_i, equal when None

    Returns:
        (rp, prj_plus, prj_minus)

    Raises:
        ParameterError: negative or all-zero weights, or Prj+ + Prj- = 0
    """
    grc_plus = np.atleast_2d(np.asarray(grc_plus, dtype=float))
    grc_minus = np.atleast_2d(np.asarray(grc_minus, dtype=float))
    n_obj = grc_plus.shape[1]
    r = np.full(n_obj, 1.0 / n_obj) if weights is None else np.asarray(weights, dtype=float)
    if r.shape != (n_obj,) or np.any(r < 0) or not np.any(r > 0):
        raise ParameterError(f"weights must be {n_obj} nonnegative values, not all zero; got {weights!r}")
    factor = r ** 2 / np.sqrt(np.sum(r ** 2))
    prj_plus = grc_plus @ factor
    prj_minus = grc_minus @ factor
    total = prj_plus + prj_minus
    if np.any(total <= 0):
        raise ParameterError("projection sum is zero, relative projection undefined")
    return prj_plus / total, prj_plus, prj_minus
