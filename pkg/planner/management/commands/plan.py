"""
Compare provider strategies with the broker on and off over one week.

Usage:
    python manage.py plan
    python manage.py plan --demand euston_week.csv --scale 0.02
    python manage.py plan --strategy 2 --out results/planner
"""

import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from planner.demand import load_demand, synthetic_week
from planner.economics import compare
from planner.report import summary_table, write_report
from simcore.errors import SimulationError

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Run the techno-economic planner and write its report'

    def add_arguments(self, parser):
        parser.add_argument('--demand', type=str, help='Weekly demand CSV (hour,customers); default: synthetic week')
        parser.add_argument('--scale', type=float, help='Demand multiplier (default: PLANNER_DEMAND_SCALE)')
        parser.add_argument(
            '--strategy',
            type=int,
            choices=[1, 2],
            action='append',
            help='Provider A strategy to evaluate; repeatable (default: both)',
        )
        parser.add_argument('--market-share', type=float, default=0.5, help="Provider A's market share (default: 0.5)")
        parser.add_argument('--out', type=str, help='Output directory (default: SIMULATION_OUTPUT_DIR/planner)')

    def handle(self, *args, **options):
        scale = options['scale']
        if scale is None:
            scale = getattr(settings, 'PLANNER_DEMAND_SCALE', 1.0)
        strategies = sorted(set(options['strategy'] or [1, 2]))
        out_dir = options['out'] or Path(getattr(settings, 'SIMULATION_OUTPUT_DIR', 'results')) / 'planner'

        try:
            if options['demand']:
                demand = load_demand(options['demand'], scale=scale)
            else:
                demand = synthetic_week().scaled(scale)
            comparison = compare(demand, strategies=strategies, overrides={'market_share': options['market_share']})
            written = write_report(comparison, out_dir)
        except SimulationError as e:
            raise CommandError(f"[{e.code.value}] {e}", returncode=e.exit_code) from e
        except ValueError as e:
            raise CommandError(str(e), returncode=2) from e

        self.stdout.write(summary_table(comparison))
        self.stdout.write(self.style.SUCCESS(f"Planner: {len(written)} files in {out_dir}"))
