"""
Tests for capacity sharing, backhaul RTT and the clock.
"""

import numpy as np
from django.test import SimpleTestCase

from simcore.backhaul import BackhaulModel, backhaul_rtt
from simcore.clock import SimClock
from simcore.traffic import (
    Flow,
    TrafficType,
    interarrival_delay,
    lost_packets,
    share_capacity,
)


class TestShareCapacity(SimpleTestCase):
    """Max-min fair water-filling."""

    def test_uncongested_gets_demand(self):
        self.assertEqual(share_capacity([320e3, 320e3], 3.5e6), [320e3, 320e3])

    def test_eighty_flows_on_wimax(self):
        allocation = share_capacity([320e3] * 80, 16e6)
        for granted in allocation:
            self.assertAlmostEqual(granted, 200e3, places=6)
        self.assertAlmostEqual(allocation[0] / 320e3, 0.625, places=9)

    def test_small_demand_share_redistributed(self):
        allocation = share_capacity([100e3, 900e3], 800e3)
        self.assertAlmostEqual(allocation[0], 100e3, places=6)
        self.assertAlmostEqual(allocation[1], 700e3, places=6)

    def test_empty(self):
        self.assertEqual(share_capacity([], 1e6), [])

    def test_invalid_inputs(self):
        with self.assertRaises(ValueError):
            share_capacity([1.0], 0)
        with self.assertRaises(ValueError):
            share_capacity([-1.0], 10)

    def test_fuzz_conservation_and_demand_cap(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            demands = rng.uniform(0, 1e6, size=int(rng.integers(1, 40))).tolist()
            capacity = float(rng.uniform(1e3, 2e7))
            allocation = share_capacity(demands, capacity)
            self.assertLessEqual(sum(allocation), capacity * (1 + 1e-9))
            for demand, granted in zip(demands, allocation):
                self.assertLessEqual(granted, demand + 1e-6)
                self.assertGreaterEqual(granted, 0.0)


class TestFlow(SimpleTestCase):

    def test_rate_must_be_positive(self):
        with self.assertRaises(ValueError):
            Flow(id=1, terminal_id=1, cbr_rate=0)

    def test_traffic_type_coerced(self):
        self.assertIs(Flow(id=1, terminal_id=1, traffic_type='video').traffic_type, TrafficType.VIDEO)

    def test_losses_and_delay(self):
        self.assertAlmostEqual(lost_packets(320e3, 200e3, 0.1), 1.5, places=9)
        self.assertEqual(lost_packets(320e3, 320e3, 0.1), 0.0)
        self.assertAlmostEqual(interarrival_delay(320e3), 0.025, places=9)
        self.assertEqual(interarrival_delay(0.0), float('inf'))


class TestBackhaulRtt(SimpleTestCase):

    def setUp(self):
        self.model = BackhaulModel(capacity=10e6)

    def test_below_knee(self):
        self.assertEqual(backhaul_rtt(5e6, self.model), 20.0)

    def test_saturation(self):
        self.assertAlmostEqual(backhaul_rtt(12e6, self.model), 300.0, places=9)

    def test_ramp_midpoint(self):
        self.assertAlmostEqual(backhaul_rtt(10.5e6, self.model), 160.0, places=9)

    def test_non_decreasing(self):
        loads = np.linspace(0, 20e6, 101)
        rtts = [backhaul_rtt(float(load), self.model) for load in loads]
        self.assertTrue(all(a <= b for a, b in zip(rtts, rtts[1:])))

    def test_invalid_model(self):
        with self.assertRaises(ValueError):
            BackhaulModel(capacity=0)
        with self.assertRaises(ValueError):
            BackhaulModel(rtt_base=300, rtt_max=20)
        with self.assertRaises(ValueError):
            backhaul_rtt(-1, self.model)


class TestSimClock(SimpleTestCase):

    def test_advances_in_exact_tick_multiples(self):
        clock = SimClock()
        for _ in range(1000):
            clock.advance()
        self.assertEqual(clock.now, 100.0)

    def test_periods(self):
        clock = SimClock(step=5)
        self.assertTrue(clock.is_due(0.5))
        self.assertFalse(clock.is_due(1.0))
        self.assertEqual(clock.step_at(9.0), 90)
        self.assertEqual(clock.step_at(9.05), 91)

    def test_tick_must_be_positive(self):
        with self.assertRaises(ValueError):
            SimClock(tick=0)
