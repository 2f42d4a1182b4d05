"""
Tests for the simulation API: presets, runs and health probes.
"""

import json
import uuid

from django.test import Client, TestCase
from model_bakery import baker

from scenarios.models import SimulationEvent, SimulationRun
from scenarios.presets import HOTSPOT, PRESETS, get_preset


def small_config_data():
    data = get_preset('B')
    data.update({
        'name': 'api-small',
        'duration': 10.0,
        'terminals': [{'kind': 'static', 'count': 3, 'x': HOTSPOT[0], 'y': HOTSPOT[1]}],
    })
    return data


class PresetApiTest(TestCase):

    def setUp(self):
        self.client = Client()

    def test_list_presets(self):
        response = self.client.get('/api/v1/presets')
        self.assertEqual(response.status_code, 200)
        data = response.json()
        names = [p['name'] for p in data['presets']]
        self.assertEqual(names, sorted(PRESETS))
        a = next(p for p in data['presets'] if p['name'] == 'A')
        self.assertFalse(a['broker_enabled'])
        self.assertEqual(a['terminals'], 80)
        self.assertEqual(data['groups'][0]['name'], 'J')
        self.assertEqual(len(data['groups'][0]['members']), 4)

    def test_get_preset_returns_validated_config(self):
        response = self.client.get('/api/v1/presets/B')
        self.assertEqual(response.status_code, 200)
        data = response.json()
        self.assertEqual(data['name'], 'B')
        self.assertEqual(data['policy']['qual_thr'], 0.525)
        self.assertEqual([n['id'] for n in data['naps']], ['BS1', 'AP1', 'AP2'])

    def test_unknown_preset_is_404(self):
        response = self.client.get('/api/v1/presets/Z')
        self.assertEqual(response.status_code, 404)
        self.assertIn('Z', response.json()['detail'])


class RunApiTest(TestCase):

    def setUp(self):
        self.client = Client()

    def post(self, payload):
        return self.client.post('/api/v1/runs', data=json.dumps(payload), content_type='application/json')

    def test_inline_config_run_is_stored(self):
        response = self.post({'config': small_config_data(), 'seed': 5, 'iterations': 2})
        self.assertEqual(response.status_code, 201)
        data = response.json()
        self.assertEqual(data['status'], 'success')
        self.assertEqual(data['scenario'], 'api-small')
        self.assertEqual(data['seed'], 5)
        self.assertEqual(data['iterations'], 2)
        self.assertEqual(data['summary']['seeds'], [5, 6])

        run = SimulationRun.objects.get(id=data['id'])
        self.assertEqual(run.status, 'success')
        self.assertTrue(SimulationEvent.objects.filter(run=run).exists())

    def test_scenario_and_config_are_exclusive(self):
        response = self.post({'scenario': 'B', 'config': small_config_data()})
        self.assertEqual(response.status_code, 400)
        response = self.post({'iterations': 1})
        self.assertEqual(response.status_code, 400)
        self.assertFalse(SimulationRun.objects.exists())

    def test_unknown_preset_run_is_404(self):
        response = self.post({'scenario': 'nope'})
        self.assertEqual(response.status_code, 404)

    def test_invalid_config_reports_key_path(self):
        data = small_config_data()
        data['duration'] = -1
        response = self.post({'config': data})
        self.assertEqual(response.status_code, 400)
        self.assertEqual(response.json()['key_path'], 'duration')
        self.assertFalse(SimulationRun.objects.exists())

    def test_iterations_are_bounded(self):
        response = self.post({'config': small_config_data(), 'iterations': 0})
        self.assertEqual(response.status_code, 422)

    def test_list_runs_filters_by_scenario(self):
        baker.make(SimulationRun, scenario='B', seed=1, status='success')
        baker.make(SimulationRun, scenario='C', seed=1, status='success')
        response = self.client.get('/api/v1/runs', {'scenario': 'C'})
        self.assertEqual(response.status_code, 200)
        self.assertEqual([r['scenario'] for r in response.json()], ['C'])

    def test_get_run(self):
        run = baker.make(SimulationRun, scenario='A', seed=3, status='error', error_code='simulator_logic')
        response = self.client.get(f'/api/v1/runs/{run.id}')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json()['error_code'], 'simulator_logic')

    def test_missing_run_is_404(self):
        response = self.client.get(f'/api/v1/runs/{uuid.uuid4()}')
        self.assertEqual(response.status_code, 404)

    def test_run_events_in_sequence(self):
        run = baker.make(SimulationRun, scenario='B', seed=1)
        SimulationEvent.objects.create(run=run, seq=1, stage='block', sim_time=12.0, data={'flow': 3})
        SimulationEvent.objects.create(run=run, seq=0, stage='attach', sim_time=10.0, data={'flow': 3})
        response = self.client.get(f'/api/v1/runs/{run.id}/events')
        self.assertEqual([e['stage'] for e in response.json()], ['attach', 'block'])
        response = self.client.get(f'/api/v1/runs/{run.id}/events', {'stage': 'block'})
        self.assertEqual([e['seq'] for e in response.json()], [1])


class HealthApiTest(TestCase):

    def test_live(self):
        response = Client().get('/api/live')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json(), {'status': 'ok'})

    def test_ready_checks_db_and_cache(self):
        response = Client().get('/api/ready')
        self.assertEqual(response.status_code, 200)
        data = response.json()
        self.assertEqual(data['status'], 'pass')
        self.assertTrue(data['checks']['db']['ok'])
        self.assertTrue(data['checks']['cache']['ok'])

    def test_health_reports_build(self):
        data = Client().get('/api/health').json()
        self.assertEqual(data['status'], 'healthy')
        self.assertIn('git_commit', data)
