"""
Tests for class-of-service enforcement and the traffic class table.
"""

import numpy as np
from django.test import SimpleTestCase

from metrics.policy import ClassOfService, PolicySet
from simcore.traffic import Flow, TrafficType
from terminal.classes import AccessCategory, PerHopBehaviour, map_traffic_class
from terminal.shaping import (
    CS1_RATE_FLOOR,
    NapContext,
    TokenBucket,
    cs1_target_ratio,
    cs1_throttle_factors,
    enforce_cs,
)


class TestEnforceCs(SimpleTestCase):

    def setUp(self):
        self.flow = Flow(id=1, terminal_id=1, cbr_rate=320e3)
        self.nap = NapContext(capacity=3.5e6, allocated_total=400e3)

    def test_cs2_caps_at_contract(self):
        self.assertEqual(enforce_cs(self.flow, 400e3, ClassOfService.CS2, self.nap), 320e3)

    def test_cs2_cap_not_binding(self):
        self.assertEqual(enforce_cs(self.flow, 200e3, 'CS2', self.nap), 200e3)

    def test_cs0_single_flow_may_use_whole_channel(self):
        nap = NapContext(capacity=3.5e6, allocated_total=3.5e6)
        self.assertEqual(enforce_cs(self.flow, 3.5e6, ClassOfService.CS0, nap), 3.5e6)

    def test_cs0_limited_by_remaining_capacity(self):
        nap = NapContext(capacity=3.5e6, allocated_total=4e6)
        self.assertEqual(enforce_cs(self.flow, 1e6, ClassOfService.CS0, nap), 0.5e6)

    def test_cs1_throttled_through_token_bucket(self):
        nap = NapContext(capacity=3.5e6, throttle={TrafficType.VOICE: 0.5})
        bucket = TokenBucket(320e3)
        self.assertAlmostEqual(enforce_cs(self.flow, 400e3, ClassOfService.CS1, nap, bucket), 160e3, places=6)

    def test_cs1_never_below_floor(self):
        nap = NapContext(capacity=3.5e6, throttle={TrafficType.VOICE: 0.0})
        shaped = enforce_cs(self.flow, 400e3, ClassOfService.CS1, nap)
        self.assertAlmostEqual(shaped, CS1_RATE_FLOOR * 320e3, places=6)

    def test_negative_allocation_rejected(self):
        with self.assertRaises(ValueError):
            enforce_cs(self.flow, -1.0, ClassOfService.CS2, self.nap)

    def test_cs2_cap_never_exceeded_under_fuzz(self):
        rng = np.random.default_rng(8)
        for _ in range(500):
            flow = Flow(id=1, terminal_id=1, cbr_rate=float(rng.uniform(1e3, 2e6)))
            allocation = float(rng.uniform(0, 4e6))
            self.assertLessEqual(enforce_cs(flow, allocation, ClassOfService.CS2, self.nap), flow.cbr_rate)


class TestCs1Throttle(SimpleTestCase):

    def setUp(self):
        self.policy = PolicySet()

    def test_target_ratio(self):
        self.assertAlmostEqual(cs1_target_ratio(self.policy, 1.0), 0.40625, places=12)
        self.assertEqual(cs1_target_ratio(PolicySet(w1=0.5, w2=0.5, qual_thr=0.4), 1.0), 0.0)

    def test_sustainable_load_untouched(self):
        demands = [(TrafficType.BACKGROUND, 320e3)] * 10 + [(TrafficType.VIDEO, 320e3)] * 10
        factors = cs1_throttle_factors(demands, 3.5e6, self.policy)
        self.assertTrue(all(f == 1.0 for f in factors.values()))

    def test_background_throttled_before_video(self):
        demands = [(TrafficType.BACKGROUND, 320e3)] * 30 + [(TrafficType.VIDEO, 320e3)] * 10
        factors = cs1_throttle_factors(demands, 3.5e6, self.policy)
        self.assertLess(factors[TrafficType.BACKGROUND], 1.0)
        self.assertEqual(factors[TrafficType.VIDEO], 1.0)
        self.assertEqual(factors[TrafficType.VOICE], 1.0)
        carried = 9.6e6 * factors[TrafficType.BACKGROUND] + 3.2e6
        self.assertAlmostEqual(carried, 3.5e6 / 0.40625, places=3)

    def test_video_throttled_when_background_exhausted(self):
        demands = [(TrafficType.BACKGROUND, 320e3), (TrafficType.VIDEO, 20e6), (TrafficType.VOICE, 320e3)]
        factors = cs1_throttle_factors(demands, 3.5e6, self.policy)
        self.assertEqual(factors[TrafficType.BACKGROUND], CS1_RATE_FLOOR)
        self.assertLess(factors[TrafficType.VIDEO], 1.0)
        self.assertGreaterEqual(factors[TrafficType.VIDEO], CS1_RATE_FLOOR)
        self.assertEqual(factors[TrafficType.VOICE], 1.0)


class TestTokenBucket(SimpleTestCase):

    def test_drip_is_capped(self):
        bucket = TokenBucket(1000.0, capacity=500.0)
        bucket.consume(500.0)
        bucket.drip(10.0)
        self.assertEqual(bucket.tokens, 500.0)

    def test_consume_grants_at_most_available(self):
        bucket = TokenBucket(1000.0, capacity=100.0)
        self.assertEqual(bucket.consume(150.0), 100.0)
        self.assertEqual(bucket.consume(1.0), 0.0)

    def test_negative_rate_rejected(self):
        with self.assertRaises(ValueError):
            TokenBucket(-1.0)


class TestTrafficClasses(SimpleTestCase):

    def test_voice(self):
        self.assertEqual(
            tuple(map_traffic_class('voice')),
            (AccessCategory.AC_VO, ClassOfService.CS2, PerHopBehaviour.EF),
        )

    def test_video(self):
        self.assertEqual(
            tuple(map_traffic_class(TrafficType.VIDEO)),
            (AccessCategory.AC_VI, ClassOfService.CS1, PerHopBehaviour.AF),
        )

    def test_background(self):
        self.assertEqual(
            tuple(map_traffic_class('background')),
            (AccessCategory.AC_BK, ClassOfService.CS0, PerHopBehaviour.BE),
        )
