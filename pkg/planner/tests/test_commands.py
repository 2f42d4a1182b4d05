"""
Tests for the plan management command and its report files.
"""

import csv
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from planner.demand import HOURS_PER_WEEK
from planner.report import HOURLY_HEADER, SUMMARY_HEADER


class TestPlanCommand(SimpleTestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def read(self, name):
        with (self.dir / 'out' / name).open(newline='') as handle:
            return list(csv.reader(handle))

    def test_synthetic_week_report(self):
        out = StringIO()
        call_command('plan', '--out', str(self.dir / 'out'), stdout=out)

        hourly = self.read('planner_hourly.csv')
        self.assertEqual(hourly[0], HOURLY_HEADER)
        # 2 strategies x 2 broker settings x 2 providers x 168 hours
        self.assertEqual(len(hourly) - 1, 8 * HOURS_PER_WEEK)

        summary = self.read('planner_summary.csv')
        self.assertEqual(summary[0], SUMMARY_HEADER)
        dominant = {(row[0], row[1]): row[2] for row in summary[1:] if row[7] == 'yes'}
        self.assertEqual(dominant[('1', 'off')], 'B')
        self.assertEqual(dominant[('2', 'off')], 'B')
        self.assertEqual(dominant[('2', 'on')], 'A')

        self.assertIn('weekly profit', out.getvalue())
        self.assertTrue((self.dir / 'out' / 'planner_summary.txt').exists())

    def test_single_strategy(self):
        call_command('plan', '--strategy', '2', '--out', str(self.dir / 'out'), stdout=StringIO())
        summary = self.read('planner_summary.csv')[1:]
        self.assertEqual({row[0] for row in summary}, {'2'})
        self.assertEqual(len(summary), 4)

    def test_demand_file_and_scale(self):
        demand = self.dir / 'week.csv'
        demand.write_text('hour,customers\n' + ''.join(f'{h},1000\n' for h in range(HOURS_PER_WEEK)))
        call_command(
            'plan', '--demand', str(demand), '--scale', '0.01', '--strategy', '1',
            '--out', str(self.dir / 'out'), stdout=StringIO(),
        )
        first = self.read('planner_hourly.csv')[1]
        self.assertEqual(float(first[4]), 5.0)

    def test_bad_demand_file_exits_nonzero(self):
        demand = self.dir / 'short.csv'
        demand.write_text('hour,customers\n0,1\n')
        with self.assertRaises(CommandError) as ctx:
            call_command('plan', '--demand', str(demand), '--out', str(self.dir / 'out'), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 3)
        self.assertIn('[demand_invalid]', str(ctx.exception))

    def test_bad_market_share(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('plan', '--market-share', '1.5', '--out', str(self.dir / 'out'), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)
