"""
Tests for the quality formulas and ranking score.
"""

from django.test import SimpleTestCase

from metrics.formulas import (
    RankCandidate,
    admission_limit,
    build_ranking,
    compute_backhaul_quality,
    compute_nap_quality,
    compute_rank_score,
    compute_reputation,
    compute_wireless_quality,
)
from metrics.policy import BackhaulQualityMode, PolicySet

TOL = 9  # assertAlmostEqual places, i.e. 1e-9


class TestBackhaulQuality(SimpleTestCase):
    """Backhaul quality from RTT with the congestion threshold rule."""

    def setUp(self):
        self.policy = PolicySet()

    def test_below_threshold_is_one(self):
        self.assertEqual(compute_backhaul_quality(50, self.policy), 1.0)

    def test_threshold_itself_is_one(self):
        self.assertEqual(compute_backhaul_quality(150, self.policy), 1.0)

    def test_rtt_max_is_zero_in_both_modes(self):
        literal = PolicySet(backhaul_quality_mode=BackhaulQualityMode.LITERAL)
        self.assertEqual(compute_backhaul_quality(300, self.policy), 0.0)
        self.assertEqual(compute_backhaul_quality(300, literal), 0.0)

    def test_normalized_midpoint(self):
        self.assertAlmostEqual(compute_backhaul_quality(160, self.policy), 0.5, places=TOL)

    def test_literal_mode_uses_k_back(self):
        literal = PolicySet(backhaul_quality_mode='literal')
        self.assertAlmostEqual(compute_backhaul_quality(204, literal), 96 / 9600, places=TOL)

    def test_beyond_rtt_max_clamps_to_zero(self):
        self.assertEqual(compute_backhaul_quality(1000, self.policy), 0.0)

    def test_negative_rtt_rejected(self):
        with self.assertRaises(ValueError):
            compute_backhaul_quality(-1, self.policy)


class TestWirelessQuality(SimpleTestCase):
    """Load-driven wireless quality."""

    def test_empty_nap(self):
        self.assertEqual(compute_wireless_quality(0, 0.0183), 1.0)

    def test_typical_wimax_load(self):
        self.assertAlmostEqual(compute_wireless_quality(24, 0.0183), 0.5608, places=TOL)

    def test_typical_wifi_load(self):
        self.assertAlmostEqual(compute_wireless_quality(8, 0.0524), 0.5808, places=TOL)

    def test_overload_clamps_to_zero(self):
        self.assertEqual(compute_wireless_quality(40, 0.0524), 0.0)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            compute_wireless_quality(-1, 0.0183)
        with self.assertRaises(ValueError):
            compute_wireless_quality(3, 0)


class TestAdmissionLimit(SimpleTestCase):

    def test_default_knees(self):
        self.assertEqual(admission_limit(0.0524, 0.525), 9)
        self.assertEqual(admission_limit(0.0183, 0.525), 25)

    def test_strict_threshold_knees(self):
        self.assertEqual(admission_limit(0.0524, 0.725), 5)
        self.assertEqual(admission_limit(0.0183, 0.725), 15)

    def test_quality_exactly_at_threshold_is_over_the_knee(self):
        self.assertEqual(admission_limit(0.25, 0.5), 1)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            admission_limit(0.0, 0.525)
        with self.assertRaises(ValueError):
            admission_limit(0.0524, 1.0)


class TestNapQuality(SimpleTestCase):
    """Weighted wireless and backhaul quality."""

    def test_ideal(self):
        self.assertEqual(compute_nap_quality(1, 1, PolicySet()), 1.0)

    def test_balanced_weights_example(self):
        policy = PolicySet(w1=0.5, w2=0.5)
        self.assertAlmostEqual(compute_nap_quality(0.57, 1, policy), 0.785, places=TOL)

    def test_dead_backhaul(self):
        self.assertAlmostEqual(compute_nap_quality(0.5, 0, PolicySet()), 0.4, places=TOL)


class TestReputation(SimpleTestCase):
    """Technology reputation is the NAP mean."""

    def test_single(self):
        self.assertAlmostEqual(compute_reputation([0.7]), 0.7, places=TOL)

    def test_pair(self):
        self.assertAlmostEqual(compute_reputation([0.6, 0.8]), 0.7, places=TOL)

    def test_ideal_technology(self):
        self.assertEqual(compute_reputation([1, 1, 1]), 1.0)

    def test_empty_rejected(self):
        with self.assertRaises(ValueError):
            compute_reputation([])


class TestRankScore(SimpleTestCase):
    """Rank score with clamped terms."""

    def setUp(self):
        self.policy = PolicySet()

    def test_at_both_thresholds_is_zero(self):
        score = compute_rank_score(self.policy.pow_thr, self.policy.qual_thr, 1.0, self.policy)
        self.assertAlmostEqual(score, 0.0, places=TOL)

    def test_power_term_clamps(self):
        score = compute_rank_score(2 * self.policy.pow_thr, self.policy.qual_thr, 1.0, self.policy)
        self.assertAlmostEqual(score, 0.2, places=TOL)

    def test_reputation_is_multiplicative(self):
        score = compute_rank_score(2 * self.policy.pow_thr, self.policy.qual_thr, 0.5, self.policy)
        self.assertAlmostEqual(score, 0.1, places=TOL)

    def test_far_terminal_scores_negative(self):
        score = compute_rank_score(0.0, 0.0, 1.0, self.policy)
        self.assertAlmostEqual(score, -1.0, places=TOL)

    def test_negative_power_rejected(self):
        with self.assertRaises(ValueError):
            compute_rank_score(-1e-9, 0.6, 1.0, self.policy)


class TestBuildRanking(SimpleTestCase):
    """Ordering and deterministic tie-breaks."""

    def setUp(self):
        self.policy = PolicySet()

    def test_empty(self):
        self.assertEqual(build_ranking([], self.policy), [])

    def test_higher_reputation_ranks_first(self):
        ranking = build_ranking([
            RankCandidate('AP1', 1.4e-8, 0.8, 0.8),
            RankCandidate('BS1', 1.4e-8, 0.8, 0.9),
        ], self.policy)
        self.assertEqual([r.nap_id for r in ranking], ['BS1', 'AP1'])

    def test_equal_scores_prefer_higher_priority(self):
        ranking = build_ranking([
            RankCandidate('AP1', 1.4e-8, 0.8, 0.9, priority=1),
            RankCandidate('BS1', 1.4e-8, 0.8, 0.9, priority=2),
        ], self.policy)
        self.assertEqual(ranking[0].nap_id, 'BS1')

    def test_equal_scores_and_priority_prefer_lower_id(self):
        ranking = build_ranking([
            RankCandidate('AP2', 1.4e-8, 0.8, 0.9),
            RankCandidate('AP1', 1.4e-8, 0.8, 0.9),
        ], self.policy)
        self.assertEqual([r.nap_id for r in ranking], ['AP1', 'AP2'])

    def test_near_equal_scores_count_as_tie(self):
        ranking = build_ranking([
            RankCandidate('AP1', 1.4e-8, 0.8, 0.9, priority=1),
            RankCandidate('BS1', 1.4e-8, 0.8, 0.9 - 1e-12, priority=2),
        ], self.policy)
        self.assertEqual(ranking[0].nap_id, 'BS1')
