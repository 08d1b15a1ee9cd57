"""
Test Simulator

This test file covers:
- Single-event transitions under a threshold policy
- Seed determinism and independence from the worker count
- Config validation
- Agreement of the Monte Carlo estimate with policy evaluation
"""

import unittest
import os
import sys
from dataclasses import replace

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '.')))

from errors import ConfigError, InfeasibleEvent
from evaluator import StopRule, evaluate_policy
from model import Event, HoldingCost, State, reference_params
from simulator import SimConfig, SimResult, simulate, step
from simulator.engine import Z_95
from solver import ThresholdPolicy, solve


class TestStep(unittest.TestCase):
    """Test one event at a time"""

    def setUp(self):
        self.params = reference_params()
        self.policy = ThresholdPolicy((18, 17, 16))

    def test_type1_arrival_preempts(self):
        self.assertEqual(step(self.params, State(1, 7), Event.A1, self.policy), (State(2, 7), -2.5, True))

    def test_type1_arrival_blocked_when_full(self):
        self.assertEqual(step(self.params, State(2, 3), Event.A1, self.policy), (State(2, 3), 0.0, False))

    def test_type2_arrival_follows_threshold(self):
        self.assertEqual(step(self.params, State(0, 18), Event.A2, self.policy), (State(0, 19), 5.0, True))
        self.assertEqual(step(self.params, State(0, 19), Event.A2, self.policy), (State(0, 19), 0.0, False))

    def test_departures(self):
        self.assertEqual(step(self.params, State(2, 4), Event.D1, self.policy)[0], State(1, 4))
        self.assertEqual(step(self.params, State(1, 7), Event.D2, self.policy)[0], State(1, 6))

    def test_infeasible_departures(self):
        with self.assertRaises(InfeasibleEvent):
            step(self.params, State(0, 3), Event.D1, self.policy)
        # every type-2 task waits in the buffer when n1 = N1
        with self.assertRaises(InfeasibleEvent):
            step(self.params, State(2, 5), Event.D2, self.policy)


class TestSimConfig(unittest.TestCase):
    """Test simulation config handling"""

    def test_validation(self):
        with self.assertRaises(ConfigError):
            SimConfig(replications=0)
        with self.assertRaises(ConfigError):
            SimConfig(discount_floor=1.5)

    def test_from_dict(self):
        config = SimConfig.from_dict({'replications': 50, 'initial': [1, 3]})
        self.assertEqual(config.initial, State(1, 3))
        self.assertEqual(config.to_dict()['initial'], [1, 3])
        with self.assertRaises(ConfigError):
            SimConfig.from_dict({'runs': 5})
        with self.assertRaises(ConfigError):
            SimConfig.from_dict({'initial': 3})

    def test_contains(self):
        result = SimResult(mean=1.0, std_error=0.5, ci95=(0.0, 2.0), replications=10, events_total=40)
        self.assertTrue(result.contains(2.0))
        self.assertFalse(result.contains(2.1))


class TestDeterminism(unittest.TestCase):
    """Same seed, same answer"""

    def setUp(self):
        self.params = reference_params(alpha=1.0)
        self.policy = ThresholdPolicy((18, 17, 16))

    def test_repeatable(self):
        config = SimConfig(replications=300, seed=11, chunk_size=64)
        first = simulate(self.params, self.policy, config)
        second = simulate(self.params, self.policy, config)
        self.assertEqual(first, second)

    def test_worker_count_does_not_matter(self):
        serial = simulate(self.params, self.policy, SimConfig(replications=300, seed=11, chunk_size=64))
        pooled = simulate(self.params, self.policy,
                          SimConfig(replications=300, seed=11, chunk_size=64, workers=4))
        self.assertEqual(serial.mean, pooled.mean)
        self.assertEqual(serial.events_total, pooled.events_total)

    def test_seed_changes_estimate(self):
        a = simulate(self.params, self.policy, SimConfig(replications=200, seed=1))
        b = simulate(self.params, self.policy, SimConfig(replications=200, seed=2))
        self.assertNotEqual(a.mean, b.mean)

    def test_zero_economy(self):
        params = reference_params(alpha=1.0, reward_R=0.0, preempt_cost_r=0.0,
                                  holding=HoldingCost.polynomial())
        result = simulate(params, self.policy, SimConfig(replications=100))
        self.assertEqual(result.mean, 0.0)
        self.assertEqual(result.std_error, 0.0)
        self.assertGreater(result.events_total, 0)

    def test_state_checks_do_not_change_result(self):
        config = SimConfig(replications=200, seed=3, chunk_size=50, initial=State(2, 17))
        checked = simulate(self.params, self.policy, replace(config, check_states=True))
        self.assertEqual(checked, simulate(self.params, self.policy, config))

    def test_interval_is_normal_around_mean(self):
        result = simulate(self.params, self.policy, SimConfig(replications=500, seed=4))
        self.assertAlmostEqual(Z_95, 1.959964, places=6)
        self.assertGreater(result.std_error, 0.0)
        self.assertAlmostEqual(result.ci95[1] - result.mean, Z_95 * result.std_error, places=9)
        self.assertAlmostEqual(result.mean - result.ci95[0], Z_95 * result.std_error, places=9)

    def test_single_replication_has_no_spread(self):
        result = simulate(self.params, self.policy, SimConfig(replications=1, seed=4))
        self.assertEqual(result.std_error, 0.0)
        self.assertEqual(result.ci95, (result.mean, result.mean))

    def test_policy_rows_checked(self):
        with self.assertRaises(ConfigError):
            simulate(self.params, ThresholdPolicy((3, 2)), SimConfig(replications=10))


class TestCrossValidation(unittest.TestCase):
    """The simulated value brackets the evaluated value on most states"""

    STATES = [State(n1, n2) for n1 in range(3) for n2 in (0, 5, 10)]

    @classmethod
    def setUpClass(cls):
        cls.params = reference_params(reward_R=1.0, alpha=0.5)
        report = solve(cls.params)
        cls.policy = report.policy
        cls.grid = evaluate_policy(cls.params, cls.policy, cap=report.cap,
                                   stop=StopRule.tolerance(1e-9))

    def test_confidence_intervals(self):
        hits = 0
        for index, s in enumerate(self.STATES):
            config = SimConfig(replications=4096, seed=100 + index, initial=s,
                               discount_floor=1e-5, workers=4)
            result = simulate(self.params, self.policy, config)
            if result.contains(self.grid.at(s.n1, s.n2)):
                hits += 1
        self.assertGreaterEqual(hits, 8)


@unittest.skipUnless(os.environ.get('RUN_SLOW_TESTS'), 'set RUN_SLOW_TESTS=1 to run (several minutes)')
class TestCrossValidationFullScale(unittest.TestCase):
    """Reference setting, 100 000 replications per state across the grid"""

    STATES = [State(n1, n2) for n1 in range(3) for n2 in (0, 10, 20)]

    @classmethod
    def setUpClass(cls):
        cls.params = reference_params()
        report = solve(cls.params)
        cls.policy = report.policy
        cls.grid = evaluate_policy(cls.params, cls.policy, cap=report.cap,
                                   stop=StopRule.tolerance(1e-9))

    def test_confidence_intervals(self):
        hits = 0
        for index, s in enumerate(self.STATES):
            config = SimConfig(replications=100000, seed=500 + index, initial=s,
                               discount_floor=1e-6, workers=4)
            result = simulate(self.params, self.policy, config)
            if result.contains(self.grid.at(s.n1, s.n2)):
                hits += 1
        self.assertGreaterEqual(hits, 8)


def run_tests():
    """Run all tests and print results"""
    suite = unittest.TestLoader().loadTestsFromModule(sys.modules[__name__])
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    print(f"Tests run: {result.testsRun}, failures: {len(result.failures)}, errors: {len(result.errors)}")
    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_tests()
    sys.exit(0 if success else 1)
