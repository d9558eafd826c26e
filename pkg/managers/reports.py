"""
Result artifacts: BCS report, plot data, metric tables and the experiment manifest.
"""

from dataclasses import asdict, dataclass, field
import json
import logging
import os

import pandas as pd

from constants import DEFAULT_OUTPUT_DIR, OUTPUT_DIR_ENV
from managers.archive_io import FLOAT_FORMAT

logger = logging.getLogger(__name__)


def resolve_output_dir(value=None):
    """Output directory: explicit value, else $CHPEED_OUTPUT_DIR, else "results"."""
    if value:
        return value
    return os.environ.get(OUTPUT_DIR_ENV) or DEFAULT_OUTPUT_DIR


def _column(solution, case):
    values = dict(zip(case.variable_labels, solution.vars.as_row().tolist()))
    values['Cost ($)'] = solution.cost
    values['Emission (kg)'] = solution.emission
    values['P_L (MW)'] = solution.loss
    values['Feasible'] = 'yes' if solution.feasible else 'no'
    return values


def bcs_frame(report, case):
    """Table with unit outputs and objectives as rows, one column per reported solution."""
    columns = {}
    for cluster in report.clusters:
        columns[f"BCS {cluster.label}"] = _column(cluster.best.solution, case)
    cheapest, cleanest = report.extremes
    if cheapest is not None:
        columns['Min cost'] = _column(cheapest, case)
        columns['Min emission'] = _column(cleanest, case)
    return pd.DataFrame(columns)


def format_bcs_table(report, case):
    frame = bcs_frame(report, case)
    return frame.to_string(float_format=lambda v: f"{v:.4f}")


def write_bcs_report(report, case, path):
    """Plain-text report: the BCS/extreme table, then each cluster's ranking."""
    lines = [f"Case: {case.name}", '', format_bcs_table(report, case), '']
    for cluster in report.clusters:
        lines.append(f"Cluster BCS {cluster.label}: center {cluster.center.tolist()}, "
                     f"{len(cluster.schemes)} scheme(s)")
        ranking = pd.DataFrame([{
            'cost_usd': s.solution.cost,
            'emission_kg': s.solution.emission,
            'grc_plus_cost': s.grc_plus[0], 'grc_plus_emission': s.grc_plus[1],
            'grc_minus_cost': s.grc_minus[0], 'grc_minus_emission': s.grc_minus[1],
            'prj_plus': s.prj_plus, 'prj_minus': s.prj_minus, 'rp': s.rp,
        } for s in cluster.schemes])
        lines.append(ranking.to_string(index=False))
        lines.append('')
    with open(path, 'w', encoding='utf-8') as f:
        f.write('\n'.join(lines))
    logger.info("Wrote BCS report to %s", path)
    return path


def write_front_plot_data(archive, path):
    """cost/emission/loss per front point, ascending cost."""
    solutions = sorted(archive, key=lambda s: (s.cost, s.emission))
    frame = pd.DataFrame({
        'cost_usd': [s.cost for s in solutions],
        'emission_kg': [s.emission for s in solutions],
        'loss_mw': [s.loss for s in solutions],
    })
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info("Wrote front plot data to %s", path)
    return path


def write_interval_plot_data(chains, path):
    """Per-interval cost/emission/loss of each schedule chain."""
    rows = []
    for chain in chains:
        for t, s in enumerate(chain.solutions):
            rows.append({'chain': f"BCS {chain.label}", 'interval': t, 'cost_usd': s.cost,
                         'emission_kg': s.emission, 'loss_mw': s.loss, 'feasible': bool(s.feasible)})
    pd.DataFrame(rows).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info("Wrote interval plot data to %s", path)
    return path


def write_metric_report(report, directory):
    """metrics.csv (average/best/worst), metric_runs.csv and reference_front.csv.

    Returns:
        list of written paths
    """
    os.makedirs(directory, exist_ok=True)
    summary = os.path.join(directory, 'metrics.csv')
    runs = os.path.join(directory, 'metric_runs.csv')
    front = os.path.join(directory, 'reference_front.csv')
    report.summary_table().to_csv(summary, index=False, float_format=FLOAT_FORMAT)
    report.runs_table().to_csv(runs, index=False, float_format=FLOAT_FORMAT)
    pd.DataFrame(report.reference_front, columns=['cost_usd', 'emission_kg']).to_csv(
        front, index=False, float_format=FLOAT_FORMAT)
    logger.info("Wrote metric report to %s", directory)
    return [summary, runs, front]


def load_metric_table(path):
    return pd.read_csv(path, float_precision='round_trip')


@dataclass
class ExperimentManifest:
    """Everything needed to reproduce a run and find its artifacts."""

    command: str
    case_path: str
    config: dict
    output_dir: str
    artifacts: list = field(default_factory=list)
    all_feasible: bool = True

    def save(self, path=None):
        path = path or os.path.join(self.output_dir, 'manifest.json')
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(asdict(self), f, indent=2)
            f.write('\n')
        return path

    @classmethod
    def load(cls, path):
        with open(path, 'r', encoding='utf-8') as f:
            return cls(**json.load(f))
