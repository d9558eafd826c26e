"""
Archive CSV writer/reader.

One row per solution in ascending cost order: every decision variable (labelled
P<k>/H<k> by unit number), objectives, loss and constraint residuals.
"""

import logging
import os

import numpy as np
import pandas as pd

from models.errors import ArchiveError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'

RESULT_COLUMNS = ['cost_usd', 'emission_kg', 'emission_s_kg', 'emission_c_kg', 'loss_mw',
                  'power_residual_mw', 'heat_residual_mwth', 'max_for_violation', 'bound_violation',
                  'penalty', 'feasible', 'interval']


def archive_frame(solutions, case=None):
    """DataFrame of solutions sorted by cost (ties by emission)."""
    solutions = sorted(solutions, key=lambda s: (s.cost, s.emission))
    if case is not None:
        labels = list(case.variable_labels)
    else:
        labels = [f"x{i}" for i in range(len(solutions[0].vars.as_row()))] if solutions else []
    rows = []
    for s in solutions:
        row = dict(zip(labels, s.vars.as_row().tolist()))
        row.update({
            'cost_usd': s.cost,
            'emission_kg': s.emission,
            'emission_s_kg': s.emission_s,
            'emission_c_kg': s.emission_c,
            'loss_mw': s.loss,
            'power_residual_mw': s.report.power_residual,
            'heat_residual_mwth': s.report.heat_residual,
            'max_for_violation': s.report.max_for_violation,
            'bound_violation': s.report.bound_violation,
            'penalty': s.penalty,
            'feasible': bool(s.feasible),
            'interval': s.interval,
        })
        rows.append(row)
    return pd.DataFrame(rows, columns=labels + RESULT_COLUMNS)


def save_archive(archive, path, case=None):
    """Write an archive CSV.

    Args:
        archive: ParetoArchive or sequence of DispatchSolution
        path: output file
        case: DispatchCase for column labels; archive.case when None

    Raises:
        ArchiveError: empty archive (nothing is written)
    """
    solutions = list(archive)
    if not solutions:
        raise ArchiveError(f"refusing to write an empty archive to {path}")
    case = case if case is not None else getattr(archive, 'case', None)
    frame = archive_frame(solutions, case)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info("Wrote %d archive rows to %s", len(frame), path)
    return path


def load_archive_table(path):
    """Read an archive CSV back with full float precision."""
    frame = pd.read_csv(path, float_precision='round_trip')
    missing = [c for c in RESULT_COLUMNS if c not in frame.columns]
    if missing:
        raise ArchiveError(f"{path}: not an archive file, missing column(s) {', '.join(missing)}")
    return frame


def objectives_from_table(frame):
    """(n, 2) cost/emission array of an archive table."""
    return frame[['cost_usd', 'emission_kg']].to_numpy(dtype=float)


def decision_rows(frame):
    """Decision-variable block of an archive table (every column before cost_usd)."""
    position = list(frame.columns).index('cost_usd')
    return np.asarray(frame.iloc[:, :position].to_numpy(dtype=float))
