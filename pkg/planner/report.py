"""
Planner report: hourly and weekly CSVs plus a plain-text comparison table.
"""

import logging
from pathlib import Path
from typing import Union

from planner.economics import Comparison
from scenarios.emit import write_csv
from simcore.errors import EmitError

logger = logging.getLogger(__name__)

HOURLY_HEADER = [
    'hour', 'strategy', 'broker', 'provider', 'subscribers', 'served', 'moved_out', 'hosted',
    'blocked', 'revenue', 'profit', 'quality', 'service_ratio',
]
SUMMARY_HEADER = [
    'strategy', 'broker', 'provider', 'weekly_profit', 'mean_quality', 'mean_service_ratio', 'blocked', 'dominant',
]


def _broker(enabled: bool) -> str:
    return 'on' if enabled else 'off'


def summary_table(comparison: Comparison) -> str:
    lines = [
        f"{'strategy':>8}  {'broker':>6}  {'provider':>8}  {'weekly profit':>13}  {'quality':>7}  {'service':>7}  {'blocked':>8}",
    ]
    for row in comparison.rows():
        marker = '  *' if row.dominant else ''
        lines.append(
            f"{row.strategy:>8}  {_broker(row.broker_enabled):>6}  {row.provider.value:>8}  "
            f"{row.weekly_profit:>13.2f}  {row.mean_quality:>7.3f}  {row.mean_service_ratio:>7.3f}  "
            f"{row.blocked:>8.1f}{marker}"
        )
    lines.append('')
    lines.append('* dominant provider (highest weekly profit) for that strategy and broker setting')
    return '\n'.join(lines) + '\n'


def write_report(comparison: Comparison, out_dir: Union[str, Path]) -> list[Path]:
    """Write planner_hourly.csv, planner_summary.csv and planner_summary.txt."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise EmitError(e.strerror or str(e), out) from e

    hourly = []
    for (strategy, broker), outcome in sorted(comparison.outcomes.items()):
        for h in outcome.hours:
            hourly.append((
                h.hour, strategy, _broker(broker), h.provider.value, h.subscribers, h.served, h.moved_out,
                h.hosted, h.blocked, h.revenue, h.profit, h.quality, h.service_ratio,
            ))
    summary = [
        (r.strategy, _broker(r.broker_enabled), r.provider.value, r.weekly_profit, r.mean_quality,
         r.mean_service_ratio, r.blocked, 'yes' if r.dominant else 'no')
        for r in comparison.rows()
    ]

    written = []
    for name, header, rows in (
        ('planner_hourly.csv', HOURLY_HEADER, hourly),
        ('planner_summary.csv', SUMMARY_HEADER, summary),
    ):
        path = out / name
        write_csv(path, header, rows)
        written.append(path)

    text_path = out / 'planner_summary.txt'
    try:
        text_path.write_text(summary_table(comparison))
    except OSError as e:
        raise EmitError(e.strerror or str(e), text_path) from e
    written.append(text_path)

    logger.info(f"Planner report written to {out}")
    return written
