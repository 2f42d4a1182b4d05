from django.test import SimpleTestCase

from metrics.policy import BackhaulQualityMode, ClassOfService, PolicySet, Technology


class TestPolicyDefaults(SimpleTestCase):
    def test_default_policy_values(self):
        policy = PolicySet()
        self.assertEqual((policy.rtt_max, policy.k_back), (300.0, 9600.0))
        self.assertEqual(policy.k1_for(Technology.WIMAX), 0.0183)
        self.assertEqual(policy.k1_for('wifi'), 0.0524)
        self.assertEqual((policy.w1, policy.w2), (0.8, 0.2))
        self.assertEqual(policy.alpha, 0.2)
        self.assertEqual(policy.pow_thr, 7e-9)
        self.assertEqual(policy.qual_thr, 0.525)
        self.assertEqual(policy.delta, 0.33)
        self.assertIs(policy.backhaul_quality_mode, BackhaulQualityMode.NORMALIZED)
        self.assertIs(policy.cs_class, ClassOfService.CS2)

    def test_string_enums_are_coerced(self):
        policy = PolicySet(backhaul_quality_mode='literal', cs_class='CS0')
        self.assertIs(policy.backhaul_quality_mode, BackhaulQualityMode.LITERAL)
        self.assertIs(policy.cs_class, ClassOfService.CS0)

    def test_alternative_threshold_values_accepted(self):
        for qt in (0.6, 0.525, 0.725):
            self.assertEqual(PolicySet(qual_thr=qt).qual_thr, qt)

    def test_as_dict_round_trips(self):
        policy = PolicySet(w1=0.5, w2=0.5)
        self.assertEqual(PolicySet(**policy.as_dict()), policy)

    def test_with_overrides_revalidates(self):
        with self.assertRaises(ValueError):
            PolicySet().with_overrides(w1=0.9)


class TestPolicyValidation(SimpleTestCase):
    def test_weights_must_sum_to_one(self):
        with self.assertRaisesMessage(ValueError, 'w1 + w2'):
            PolicySet(w1=0.7, w2=0.2)

    def test_negative_weight(self):
        with self.assertRaises(ValueError):
            PolicySet(w1=1.2, w2=-0.2)

    def test_threshold_bounds(self):
        for bad in (0.0, 1.0, 1.5):
            with self.assertRaises(ValueError):
                PolicySet(qual_thr=bad)

    def test_alpha_delta_pow_thr(self):
        with self.assertRaises(ValueError):
            PolicySet(alpha=1.1)
        with self.assertRaises(ValueError):
            PolicySet(delta=-0.1)
        with self.assertRaises(ValueError):
            PolicySet(pow_thr=0)

    def test_k1_must_be_positive(self):
        with self.assertRaises(ValueError):
            PolicySet(k1_per_technology={'wifi': 0.0})

    def test_rtt_ordering(self):
        with self.assertRaises(ValueError):
            PolicySet(rtt_base=200)
        with self.assertRaises(ValueError):
            PolicySet(rtt_congestion_threshold=400)

    def test_unknown_technology_k1(self):
        with self.assertRaises(ValueError):
            PolicySet().k1_for('lte')
