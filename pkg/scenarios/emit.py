"""
CSV and plain-text report emission.

Every CSV starts with a header row, uses ',' as separator, '.' as decimal
separator and reports time in simulated seconds. Multi-replication summaries
carry a ``run`` column (the replication seed) on per-run files.
"""

import csv
import logging
import math
from pathlib import Path
from typing import Union

from simcore.errors import EmitError
from scenarios.stats import Estimate, Summary

logger = logging.getLogger(__name__)

CSV_HEADERS = {
    'flows_per_tech.csv': ['t', 'technology', 'attached_flows'],
    'flows_per_tech_ci.csv': ['t', 'technology', 'mean', 'half_width'],
    'flow_throughput.csv': ['run', 't', 'flow', 'nap', 'technology', 'throughput'],
    'lost_packets.csv': ['run', 't', 'flow', 'lost_packets'],
    'interarrival_delay.csv': ['run', 't', 'flow', 'delay'],
    'backhaul_quality.csv': ['t', 'technology', 'q_back'],
    'reputation.csv': ['t', 'technology', 'reputation'],
}


def format_value(value) -> str:
    if value is None:
        return ''
    if isinstance(value, float):
        if math.isinf(value):
            return 'inf'
        return repr(round(value, 9))
    return str(value)


def write_csv(path: Path, header: list[str], rows) -> None:
    try:
        with path.open('w', newline='') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(v) for v in row])
    except OSError as e:
        raise EmitError(e.strerror or str(e), path) from e


def _series_rows(summary: Summary, series: dict):
    for tech in summary.technologies:
        estimate = series.get(tech)
        if estimate is None:
            continue
        for t, mean in zip(estimate.times, estimate.mean):
            yield (t, tech, mean)


def _format_estimate(e: Estimate) -> str:
    if e.half_width is None:
        return f"{e.mean:.4f} (CI n/a)"
    return f"{e.mean:.4f} ± {e.half_width:.4f}"


def summary_text(summary: Summary) -> str:
    lines = [
        f"Scenario: {summary.scenario}",
        f"Replications: {summary.replications} (seeds {', '.join(str(s) for s in summary.seeds)})",
        f"Technologies: {', '.join(summary.technologies)}",
        "",
        "Totals (mean ± 95% CI half-width):",
    ]
    for name, e in summary.scalars.items():
        lines.append(f"  {name}: {_format_estimate(e)}")
    lines.append("")
    lines.append("Policy:")
    for key, value in summary.policy.items():
        lines.append(f"  {key} = {value}")
    return '\n'.join(lines) + '\n'


def emit(summary: Summary, out_dir: Union[str, Path]) -> list[Path]:
    """Write the summary's CSVs and summary.txt; returns the paths written."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise EmitError(e.strerror or str(e), out) from e

    runs = summary.runs
    # means across replications
    flows_rows = list(_series_rows(summary, summary.flows_per_tech))
    ci_rows = []
    for tech in summary.technologies:
        estimate = summary.flows_per_tech.get(tech)
        if estimate is None:
            continue
        for t, mean, half in zip(estimate.times, estimate.mean, estimate.half_width):
            ci_rows.append((t, tech, mean, half))

    tables = {
        'flows_per_tech.csv': flows_rows,
        'flows_per_tech_ci.csv': ci_rows,
        'flow_throughput.csv': [
            (r.seed, s.t, s.flow_id, s.nap_id, s.technology, s.throughput) for r in runs for s in r.flow_samples
        ],
        'lost_packets.csv': [
            (r.seed, s.t, s.flow_id, s.lost_packets) for r in runs for s in r.flow_samples
        ],
        'interarrival_delay.csv': [
            (r.seed, s.t, s.flow_id, s.delay) for r in runs for s in r.flow_samples
        ],
        'backhaul_quality.csv': list(_series_rows(summary, summary.backhaul_quality)),
        'reputation.csv': list(_series_rows(summary, summary.reputation)),
    }

    written = []
    for name, header in CSV_HEADERS.items():
        path = out / name
        write_csv(path, header, tables[name])
        written.append(path)

    text_path = out / 'summary.txt'
    try:
        text_path.write_text(summary_text(summary))
    except OSError as e:
        raise EmitError(e.strerror or str(e), text_path) from e
    written.append(text_path)

    logger.info(f"Emitted {len(written)} files for {summary.scenario} to {out}")
    return written
