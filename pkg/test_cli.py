"""
Test Command-Line Interface

This test file covers:
- solve, bounds, evaluate and simulate on the reference setting
- Artifact layout (grid.csv, actions.csv, policy.json, report.json)
- Config errors and their exit code
- dataset/train/predict plumbing on a tiny sweep
"""

import unittest
import json
import logging
import os
import shutil
import sys
import tempfile

import numpy as np
from click.testing import CliRunner

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '.')))

from app import cli
from generators import Dataset
from serializers import dataset_to_csv
from utils import write_text


R1_CONFIG = """
model:
  lambda1: 1.0
  lambda2: 2.0
  mu1: 6.0
  mu2: 8.0
  capacity_C: 10
  vms_per_pu_b: 5
  alpha: 0.1
  reward_R: 1.0
  preempt_cost_r: 0.5
  holding: {kind: SquareSum}
"""

BAD_CONFIG = R1_CONFIG.replace('vms_per_pu_b: 5', 'vms_per_pu_b: 4')


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.runner = CliRunner(mix_stderr=False)

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)
        # the CLI points the root handler at the runner stream
        logging.getLogger().handlers.clear()

    def invoke(self, *args):
        result = self.runner.invoke(cli, list(args), catch_exceptions=False)
        return result

    def read(self, *parts):
        with open(os.path.join(self.tmp, *parts), encoding='utf-8') as f:
            return f.read()


class TestSolveCommand(CliTestCase):
    """Test solve and its artifacts"""

    def test_reference_r5(self):
        out = os.path.join(self.tmp, 'r5')
        result = self.invoke('solve', '--out', out)
        self.assertEqual(result.exit_code, 0, result.stderr)
        summary = json.loads(result.stdout)
        self.assertEqual(summary['thresholds'], [18, 17, 16])
        self.assertEqual(summary['cap'], 205)

        actions = self.read('r5', 'actions.csv').splitlines()
        row0 = [int(v) for v in actions[1].split(',')[1:]]
        self.assertEqual(max(i for i, v in enumerate(row0) if v == 1), 18)
        grid = self.read('r5', 'grid.csv').splitlines()
        self.assertEqual(grid[1].split(',')[1], '96.53')
        report = json.loads(self.read('r5', 'report.json'))
        self.assertEqual(report['bounds']['upper'], 200)
        self.assertEqual(json.loads(self.read('r5', 'policy.json'))['thresholds'], [18, 17, 16])

    def test_r1_config(self):
        config = write_text(self.tmp, 'r1.yaml', R1_CONFIG)
        result = self.invoke('solve', '--config', config, '--out', os.path.join(self.tmp, 'r1'))
        self.assertEqual(result.exit_code, 0, result.stderr)
        grid = self.read('r1', 'grid.csv').splitlines()
        self.assertEqual(grid[3].split(',')[18], '-17.85')

    def test_full_precision(self):
        config = write_text(self.tmp, 'r1.yaml', R1_CONFIG)
        result = self.invoke('solve', '--config', config, '--out', self.tmp, '--full-precision')
        self.assertEqual(result.exit_code, 0, result.stderr)
        cell = self.read('grid.csv').splitlines()[1].split(',')[1]
        self.assertAlmostEqual(float(cell), 16.53, delta=0.01)
        self.assertGreater(len(cell), 5)

    def test_bad_capacity_exits_2(self):
        config = write_text(self.tmp, 'bad.yaml', BAD_CONFIG)
        result = self.invoke('solve', '--config', config, '--out', self.tmp)
        self.assertEqual(result.exit_code, 2)
        error = json.loads(result.stderr.strip().splitlines()[-1])
        self.assertEqual(error['error'], 'ConfigError')
        self.assertFalse(os.path.exists(os.path.join(self.tmp, 'grid.csv')))

    def test_mistyped_config_exits_2(self):
        documents = {
            'iter.yaml': 'solver: {max_iter: 0}\n',
            'tol.yaml': 'solver: {tol: fast}\n',
            'floor.yaml': 'sim: {discount_floor: tiny}\n',
            'lr.yaml': 'train: {learning_rate: big}\n',
            'initial.yaml': 'sim: {initial: [a, 1]}\n',
        }
        for name, text in documents.items():
            with self.subTest(config=name):
                config = write_text(self.tmp, name, text)
                result = self.invoke('solve', '--config', config, '--out', self.tmp)
                self.assertEqual(result.exit_code, 2)
                error = json.loads(result.stderr.strip().splitlines()[-1])
                self.assertEqual(error['error'], 'ConfigError')

    def test_undecodable_config_exits_2(self):
        path = os.path.join(self.tmp, 'binary.yaml')
        with open(path, 'wb') as f:
            f.write(b'model: \xff\n')
        result = self.invoke('solve', '--config', path, '--out', self.tmp)
        self.assertEqual(result.exit_code, 2)
        self.assertEqual(json.loads(result.stderr.strip().splitlines()[-1])['error'], 'ConfigError')

    def test_bad_cap_exits_2(self):
        result = self.invoke('solve', '--cap', 'wide', '--out', self.tmp)
        self.assertEqual(result.exit_code, 2)

    def test_small_cap_exits_1(self):
        result = self.invoke('solve', '--cap', '15', '--out', self.tmp)
        self.assertEqual(result.exit_code, 1)
        self.assertIn('CapTooSmall', result.stderr)


class TestPolicyCommands(CliTestCase):
    """Test bounds, evaluate and simulate with a saved policy"""

    def setUp(self):
        super().setUp()
        self.config = write_text(self.tmp, 'r1.yaml', R1_CONFIG)
        self.policy = write_text(self.tmp, 'policy.json',
                                 json.dumps({'thresholds': [6, 5, 4], 'reject_all_sentinel': -1}))

    def test_bounds(self):
        result = self.invoke('bounds', '--config', self.config)
        self.assertEqual(json.loads(result.stdout)['upper'], 40)

    def test_bracket(self):
        result = self.invoke('bounds', '--config', self.config, '--policy', self.policy)
        self.assertEqual(json.loads(result.stdout)['upper_margins'], [34, 35, 36])
        too_high = write_text(self.tmp, 'high.json', json.dumps({'thresholds': [41, 5, 4]}))
        result = self.invoke('bounds', '--config', self.config, '--policy', too_high)
        self.assertEqual(result.exit_code, 1)

    def test_evaluate(self):
        result = self.invoke('evaluate', '--config', self.config, '--policy', self.policy,
                             '--out', self.tmp)
        self.assertEqual(result.exit_code, 0, result.stderr)
        summary = json.loads(result.stdout)
        self.assertAlmostEqual(summary['value_at_origin'], 16.53, delta=0.02)
        self.assertTrue(os.path.exists(os.path.join(self.tmp, 'evaluated_grid.csv')))

    def test_simulate(self):
        args = ['simulate', '--config', self.config, '--policy', self.policy, '--out', self.tmp,
                '--state', '2', '3', '--replications', '64', '--seed', '5']
        first = self.invoke(*args)
        second = self.invoke(*args)
        self.assertEqual(first.exit_code, 0, first.stderr)
        self.assertEqual(first.stdout, second.stdout)
        data = json.loads(first.stdout)
        self.assertEqual(data['initial'], [2, 3])
        self.assertEqual(data['replications'], 64)
        self.assertEqual(data['seed'], 5)

    def test_missing_policy_file(self):
        result = self.invoke('evaluate', '--config', self.config,
                             '--policy', os.path.join(self.tmp, 'none.json'))
        self.assertEqual(result.exit_code, 2)


class TestEstimatorCommands(CliTestCase):
    """Test dataset, train and predict on small inputs"""

    def test_dataset(self):
        config = write_text(self.tmp, 'sweep.yaml', R1_CONFIG + """
sweep:
  values_R: [1.0, 2.0]
  values_lambda2: [2.0]
  values_mu2: [8.0]
""")
        result = self.invoke('dataset', '--config', config, '--out', self.tmp)
        self.assertEqual(result.exit_code, 0, result.stderr)
        self.assertEqual(json.loads(result.stdout)['rows'], 2)
        lines = self.read('dataset.csv').splitlines()
        self.assertEqual(lines[1], '1.0,1.0,2.0,6.0,8.0,6,5,4')

    def test_train_and_predict(self):
        rng = np.random.default_rng(0)
        features = np.column_stack([rng.uniform(1, 8, 30), np.ones(30), rng.uniform(1, 5, 30),
                                    np.full(30, 6.0), rng.uniform(8, 16, 30)])
        labels = np.rint(np.column_stack([2 * features[:, 0] + 8] * 3)).astype(int)
        dataset = write_text(self.tmp, 'dataset.csv', dataset_to_csv(Dataset(features, labels)))
        config = write_text(self.tmp, 'train.yaml', 'train:\n  hidden: 4\n  epochs: 50\n')

        result = self.invoke('train', '--config', config, '--dataset', dataset, '--out', self.tmp)
        self.assertEqual(result.exit_code, 0, result.stderr)
        self.assertEqual(json.loads(self.read('train_report.json'))['rows']['train'], 22)

        network = os.path.join(self.tmp, 'network.json')
        result = self.invoke('predict', '--network', network, '--features', '5', '1', '2', '6', '8')
        self.assertEqual(result.exit_code, 0, result.stderr)
        thresholds = json.loads(result.stdout)['thresholds']
        self.assertEqual(len(thresholds), 3)
        self.assertTrue(all(isinstance(d, int) and d >= -1 for d in thresholds))

    def test_train_needs_rows(self):
        dataset = write_text(self.tmp, 'tiny.csv', 'R,lambda1,lambda2,mu1,mu2,D0\n1,1,2,6,8,3\n')
        result = self.invoke('train', '--dataset', dataset, '--out', self.tmp)
        self.assertEqual(result.exit_code, 2)


def run_tests():
    """Run all tests and print results"""
    suite = unittest.TestLoader().loadTestsFromModule(sys.modules[__name__])
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    print(f"Tests run: {result.testsRun}, failures: {len(result.failures)}, errors: {len(result.errors)}")
    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_tests()
    sys.exit(0 if success else 1)
