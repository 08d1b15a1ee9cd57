"""
Test Policy Evaluation

This test file covers:
- Values of the reference thresholds
- Stopping rules (discount count and tolerance)
- Optimal policy dominance over perturbed thresholds
- Grid comparison
"""

import unittest
import os
import sys

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '.')))

from errors import ConfigError, DomainError, ShapeMismatch
from evaluator import StopRule, compare_grids, discount_iterations, evaluate_policy
from model import HoldingCost, reference_params, uniformization_constant
from solver import ThresholdPolicy, ValueGrid, solve


class TestReferenceValues(unittest.TestCase):
    """Test V_D at the reference thresholds"""

    def test_r5(self):
        grid = evaluate_policy(reference_params(), ThresholdPolicy((18, 17, 16)))
        self.assertAlmostEqual(grid.at(0, 0), 96.53, delta=0.02)
        self.assertAlmostEqual(grid.at(1, 17), 66.49, delta=0.02)
        self.assertEqual(grid.cap, 205)

    def test_r1_matches_optimal_grid(self):
        params = reference_params(reward_R=1.0)
        report = solve(params)
        grid = evaluate_policy(params, report.policy, cap=report.cap)
        self.assertAlmostEqual(grid.at(0, 0), 16.53, delta=0.02)
        self.assertLess(compare_grids(grid, report.grid), 0.02)

    def test_zero_economy(self):
        params = reference_params(reward_R=0.0, preempt_cost_r=0.0, holding=HoldingCost.polynomial())
        for d in [(-1, -1, -1), (3, 2, 1)]:
            grid = evaluate_policy(params, ThresholdPolicy(d), cap=20)
            self.assertTrue(np.all(grid.values == 0.0))

    def test_reject_all_is_holding_and_preemption_only(self):
        params = reference_params()
        reject = evaluate_policy(params, ThresholdPolicy((-1, -1, -1)), cap=30)
        admit = evaluate_policy(params, ThresholdPolicy((18, 17, 16)), cap=30)
        self.assertLess(reject.at(0, 0), 0.0)
        self.assertGreater(admit.at(0, 0), reject.at(0, 0))


class TestStopRules(unittest.TestCase):
    """Test the two stopping rules"""

    def test_discount_iterations(self):
        params = reference_params()
        c = uniformization_constant(params)
        modulus = c / (params.alpha + c)
        k = discount_iterations(params)
        self.assertLess(modulus ** k, 1e-6)
        self.assertGreaterEqual(modulus ** (k - 1), 1e-6)

    def test_rules_agree(self):
        params = reference_params(reward_R=1.0)
        policy = ThresholdPolicy((11, 8, 7))
        by_count = evaluate_policy(params, policy)
        by_tol = evaluate_policy(params, policy, stop=StopRule.tolerance(1e-9))
        self.assertLess(compare_grids(by_count, by_tol), 1e-3)

    def test_policy_checks(self):
        params = reference_params(reward_R=1.0)
        with self.assertRaises(ConfigError):
            evaluate_policy(params, ThresholdPolicy((11, 8)))
        with self.assertRaises(DomainError):
            evaluate_policy(params, ThresholdPolicy((45, 8, 7)), cap=45)


class TestDominance(unittest.TestCase):
    """The optimal thresholds are at least as good as their neighbours"""

    @classmethod
    def setUpClass(cls):
        cls.params = reference_params(reward_R=1.0)
        cls.report = solve(cls.params)
        cls.best = evaluate_policy(cls.params, cls.report.policy, cap=cls.report.cap,
                                   stop=StopRule.tolerance(1e-10))

    def test_single_row_perturbations(self):
        d = self.report.policy.thresholds
        for n1 in range(len(d)):
            for shift in (-1, 1):
                changed = list(d)
                changed[n1] += shift
                with self.subTest(thresholds=changed):
                    grid = evaluate_policy(self.params, ThresholdPolicy(tuple(changed)),
                                           cap=self.report.cap, stop=StopRule.tolerance(1e-10))
                    self.assertTrue(np.all(self.best.values >= grid.values - 1e-6))


class TestCompareGrids(unittest.TestCase):
    """Test sup-norm grid comparison"""

    def test_difference(self):
        a = ValueGrid(np.zeros((3, 4)))
        b = ValueGrid(np.full((3, 4), 0.5))
        self.assertEqual(compare_grids(a, b), 0.5)
        self.assertEqual(compare_grids(a, a), 0.0)

    def test_arrays_accepted(self):
        self.assertEqual(compare_grids([[1.0, 2.0]], [[1.0, -1.0]]), 3.0)

    def test_shape_mismatch(self):
        with self.assertRaises(ShapeMismatch):
            compare_grids(ValueGrid(np.zeros((3, 4))), ValueGrid(np.zeros((3, 5))))


def run_tests():
    """Run all tests and print results"""
    suite = unittest.TestLoader().loadTestsFromModule(sys.modules[__name__])
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    print(f"Tests run: {result.testsRun}, failures: {len(result.failures)}, errors: {len(result.errors)}")
    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_tests()
    sys.exit(0 if success else 1)
