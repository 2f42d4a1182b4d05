"""
Tests for replication running, celery fan-out and run persistence.
"""

from unittest.mock import patch

from django.test import SimpleTestCase, TestCase, override_settings

from scenarios.config import validate_config
from scenarios.models import SimulationEvent, SimulationRun
from scenarios.presets import HOTSPOT, get_preset
from scenarios.runner import run, run_replications
from scenarios.services import execute
from simcore.errors import ScenarioConfigError
from simcore.recorder import EventRecorder


def small_config(**extra):
    data = get_preset('B')
    data.update({
        'name': 'small',
        'duration': 15.0,
        'iterations': 2,
        'terminals': [{'kind': 'static', 'count': 5, 'x': HOTSPOT[0], 'y': HOTSPOT[1]}],
    })
    data.update(extra)
    return validate_config(data)


class TestRunner(SimpleTestCase):

    def test_run_is_deterministic_per_seed(self):
        config = small_config()
        self.assertEqual(run(config, 3).to_dict(), run(config, 3).to_dict())

    def test_run_samples_every_second(self):
        result = run(small_config(), 1)
        self.assertEqual(result.times[0], 0.0)
        self.assertEqual(result.times[-1], 15.0)
        self.assertEqual(len(result.times), 16)
        self.assertEqual(result.attached_at(15.0), 5)

    def test_replications_use_consecutive_seeds(self):
        results = run_replications(small_config(), iterations=3, base_seed=7, parallel=False)
        self.assertEqual([r.seed for r in results], [7, 8, 9])

    def test_defaults_come_from_config(self):
        results = run_replications(small_config(iterations=2, seed=4), parallel=False)
        self.assertEqual([r.seed for r in results], [4, 5])

    def test_iterations_must_be_positive(self):
        with self.assertRaises(ValueError):
            run_replications(small_config(), iterations=0)

    def test_parallel_matches_sequential(self):
        config = small_config()
        sequential = run_replications(config, iterations=2, base_seed=1, parallel=False)
        parallel = run_replications(config, iterations=2, base_seed=1, parallel=True)
        self.assertEqual([r.to_dict() for r in parallel], [r.to_dict() for r in sequential])

    def test_replication_spans_are_recorded(self):
        recorder = EventRecorder()
        run_replications(small_config(), iterations=2, base_seed=1, parallel=False, recorder=recorder)
        spans = recorder.get_events_by_stage('replication')
        self.assertEqual([span['data']['seed'] for span in spans], [1, 2])
        self.assertEqual(len(recorder.get_events_by_stage('attach')), 10)


class TestExecute(TestCase):

    def test_without_persistence(self):
        execution = execute(small_config(), iterations=2, seed=1, parallel=False, persist=False)
        self.assertIsNone(execution.run_id)
        self.assertEqual(execution.summary.replications, 2)
        self.assertEqual(SimulationRun.objects.count(), 0)

    def test_persisted_run(self):
        execution = execute(small_config(), iterations=2, seed=1, parallel=False, persist=True)
        record = SimulationRun.objects.get(id=execution.run_id)
        self.assertEqual(record.status, 'success')
        self.assertEqual(record.scenario, 'small')
        self.assertEqual(record.iterations, 2)
        self.assertEqual(record.config['name'], 'small')
        self.assertEqual(record.summary['seeds'], [1, 2])
        self.assertIn('handovers', record.summary['scalars'])
        self.assertIsNotNone(record.total_latency_ms)

        events = SimulationEvent.objects.filter(run=record)
        self.assertEqual(events.filter(stage='replication').count(), 2)
        self.assertEqual(events.filter(stage='attach').count(), 10)
        seqs = list(events.values_list('seq', flat=True))
        self.assertEqual(seqs, sorted(seqs))

    @override_settings(SIMULATION_PERSIST_RUNS=True)
    def test_persistence_default_from_settings(self):
        execution = execute(small_config(), iterations=1, seed=1, parallel=False)
        self.assertIsNotNone(execution.run_id)

    def test_failed_run_is_recorded(self):
        config = small_config(terminals=[{'kind': 'trace', 'count': 2, 'path': '/nonexistent/walk.movements'}])
        with self.assertRaises(ScenarioConfigError):
            execute(config, iterations=1, seed=1, parallel=False, persist=True)
        record = SimulationRun.objects.get()
        self.assertEqual(record.status, 'error')
        self.assertEqual(record.error_code, 'scenario_config')
        self.assertIn('cannot read trace', record.error_message)

    def test_unexpected_exception_marks_run_as_error(self):
        crash = ValueError('n_flow must be non-negative (got -1)')
        with patch('scenarios.services.run_replications', side_effect=crash):
            with self.assertRaises(ValueError):
                execute(small_config(), iterations=1, seed=1, parallel=False, persist=True)
        record = SimulationRun.objects.get()
        self.assertEqual(record.status, 'error')
        self.assertEqual(record.error_code, 'simulator_logic')
        self.assertEqual(record.error_message, 'ValueError: n_flow must be non-negative (got -1)')
        self.assertIsNotNone(record.total_latency_ms)
