"""
Tests for positions, coverage and received power.
"""

from django.test import SimpleTestCase

from nap.services import make_nap
from metrics.policy import PolicySet
from simcore.geometry import Position, in_coverage, received_power


class TestPosition(SimpleTestCase):

    def test_distance(self):
        self.assertEqual(Position(0, 0).distance_to(Position(3, 4)), 5.0)

    def test_non_finite_rejected(self):
        with self.assertRaises(ValueError):
            Position(float('nan'), 0)
        with self.assertRaises(ValueError):
            Position(0, float('inf'))


class TestReceivedPower(SimpleTestCase):
    """Inverse-square power calibrated to pow_thr at the coverage edge."""

    def setUp(self):
        self.ap = make_nap('AP1', 'wifi', Position(0, 0), 20.0, PolicySet())

    def test_power_at_edge_equals_threshold(self):
        self.assertAlmostEqual(received_power(Position(20, 0), self.ap), 7e-9, places=20)

    def test_half_radius_is_four_times_edge(self):
        self.assertAlmostEqual(received_power(Position(10, 0), self.ap), 2.8e-8, places=20)

    def test_outside_coverage_is_zero(self):
        self.assertEqual(received_power(Position(25, 0), self.ap), 0.0)
        self.assertFalse(in_coverage(Position(25, 0), self.ap))

    def test_minimum_distance_caps_power(self):
        at_nap = received_power(Position(0, 0), self.ap)
        at_one_metre = received_power(Position(1, 0), self.ap)
        self.assertEqual(at_nap, at_one_metre)
        self.assertAlmostEqual(at_nap, 7e-9 * 400, places=18)
