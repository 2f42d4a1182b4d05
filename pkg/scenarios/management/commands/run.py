"""
Run a scenario (file or built-in preset) and write its CSVs and summary.

Usage:
    python manage.py run B
    python manage.py run B --iterations 10 --seed 1 --out results/B
    python manage.py run J --iterations 3
    python manage.py run scenarios/my_scenario.toml --parallel
    python manage.py run RW --trace traces/campus.movements
"""

import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from scenarios.config import validate_config
from scenarios.emit import emit
from scenarios.loader import load_scenarios
from scenarios.services import execute
from simcore.errors import SimulationError

logger = logging.getLogger(__name__)


def with_trace(config, trace_path: str):
    """Replace every trace group's source with the given BonnMotion file."""
    data = config.to_dict()
    for group in data['terminals']:
        if group['kind'] == 'trace':
            group['path'] = str(Path(trace_path).resolve())
            group['random_waypoint'] = None
    return validate_config(data)


class Command(BaseCommand):
    help = 'Run a simulation scenario and emit CSV results'

    def add_arguments(self, parser):
        parser.add_argument('scenario', help='Scenario file (.toml/.json) or preset name (see list_presets)')
        parser.add_argument('--iterations', type=int, help='Number of replications (default: from scenario)')
        parser.add_argument('--seed', type=int, help='Base seed (default: SIMULATION_DEFAULT_SEED)')
        parser.add_argument('--out', type=str, help='Output directory (default: SIMULATION_OUTPUT_DIR/<scenario>)')
        parser.add_argument('--parallel', action='store_true', help='Fan replications out as celery tasks')
        parser.add_argument('--persist', action='store_true', help='Store the run and its events in the database')
        parser.add_argument('--trace', type=str, help='BonnMotion trace replacing generated RandomWaypoint nodes')

    def handle(self, *args, **options):
        seed = options['seed']
        if seed is None:
            seed = getattr(settings, 'SIMULATION_DEFAULT_SEED', 1)
        iterations = options['iterations']
        if iterations is not None and iterations < 1:
            raise CommandError('--iterations must be at least 1', returncode=2)

        try:
            configs = load_scenarios(options['scenario'])
            if options['trace']:
                configs = [with_trace(config, options['trace']) for config in configs]

            for config in configs:
                out_dir = options['out']
                if out_dir is None:
                    out_dir = Path(getattr(settings, 'SIMULATION_OUTPUT_DIR', 'results')) / config.name
                elif len(configs) > 1:
                    out_dir = Path(out_dir) / config.name

                self.stdout.write(f"Running {config.name}: {iterations or config.iterations} replications from seed {seed}")
                execution = execute(
                    config,
                    iterations=iterations,
                    seed=seed,
                    parallel=options['parallel'] or None,
                    persist=options['persist'] or None,
                )
                written = emit(execution.summary, out_dir)

                summary = execution.summary
                handovers = summary.scalars['handovers']
                blocks = summary.scalars['blocks']
                self.stdout.write(
                    self.style.SUCCESS(
                        f"{config.name}: handovers {handovers.mean:.1f}, blocks {blocks.mean:.1f}, "
                        f"{len(written)} files in {out_dir} ({execution.latency_ms}ms)"
                    )
                )
                if execution.run_id:
                    self.stdout.write(f"  persisted as run {execution.run_id}")
        except SimulationError as e:
            raise CommandError(f"[{e.code.value}] {e}", returncode=e.exit_code) from e
