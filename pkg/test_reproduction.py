"""
Test Reproduction Runner

This test file covers:
- The reference settings pass against their tables
- Perturbed tables are reported and raised as GoldenMismatch
- Settings without tables are solved but not compared
- The reproduce-paper command
"""

import unittest
import json
import logging
import os
import shutil
import sys
import tempfile

from click.testing import CliRunner

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '.')))

from app import cli
from errors import GoldenMismatch
from model import reference_params
from reproduction import GOLDENS, check_setting, run_reproduction, table_thresholds
from utils import write_text


class TestReferenceRun(unittest.TestCase):
    """Both reference settings reproduce"""

    @classmethod
    def setUpClass(cls):
        cls.report = run_reproduction()

    def test_passes(self):
        self.assertTrue(self.report.passed, self.report.mismatches)
        self.report.raise_for_mismatch()

    def test_settings(self):
        names = [s.name for s in self.report.settings]
        self.assertEqual(names, ['R=5', 'R=1'])
        self.assertEqual(self.report.settings[0].solve.policy.thresholds, [18, 17, 16])
        self.assertLessEqual(self.report.settings[1].evaluator_gap, 0.02)

    def test_document(self):
        data = self.report.to_dict()
        self.assertEqual(data['status'], 'PASS')
        self.assertNotIn('estimator', data)
        self.assertEqual(data['settings'][1]['bracket']['upper_margins'], [34, 35, 36])


class TestTableThresholds(unittest.TestCase):
    """Thresholds implied by the printed value tables"""

    def test_reference_tables(self):
        self.assertEqual(GOLDENS[0].implied_thresholds(), [18, 17, 16])
        self.assertEqual(GOLDENS[1].implied_thresholds(), [6, 5, 4])
        for golden in GOLDENS:
            self.assertEqual(golden.implied_thresholds(), list(golden.thresholds))

    def test_r1_row_zero_cells(self):
        table = GOLDENS[1].optimal
        self.assertLessEqual(table[0, 6], 1.0 + table[0, 7])
        self.assertGreater(table[0, 7], 1.0 + table[0, 8])

    def test_edge_rows(self):
        table = [[10.0, 9.5, 8.0], [10.0, 9.5, 9.0], [10.0, 4.0, 0.0]]
        self.assertEqual(table_thresholds(table, 1.0), [0, None, -1])

    def test_printed_thresholds_are_notes(self):
        result = check_setting(GOLDENS[1])
        self.assertEqual(result.mismatches, [])
        self.assertEqual(len(result.notes), 1)
        self.assertIn('[11, 8, 7]', result.notes[0])
        self.assertEqual(result.to_dict()['notes'], result.notes)
        self.assertEqual(check_setting(GOLDENS[0]).notes, [])


class TestMismatches(unittest.TestCase):
    """Test mismatch reporting"""

    def test_perturbed_table(self):
        golden = GOLDENS[1]
        optimal = golden.optimal.copy()
        optimal[2, 17] += 0.5
        result = check_setting(golden.with_optimal(optimal))
        self.assertEqual(len(result.mismatches), 1)
        self.assertIn('(2,17)', result.mismatches[0])

        report = run_reproduction(goldens=[golden.with_optimal(optimal)])
        self.assertFalse(report.passed)
        self.assertEqual(report.to_dict()['status'], 'FAIL')
        with self.assertRaises(GoldenMismatch) as ctx:
            report.raise_for_mismatch()
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_selects_matching_setting(self):
        report = run_reproduction(params=reference_params(reward_R=1.0))
        self.assertEqual([s.name for s in report.settings], ['R=1'])
        self.assertTrue(report.passed)

    def test_setting_without_tables(self):
        report = run_reproduction(params=reference_params(vms_per_pu_b=2))
        self.assertEqual(len(report.settings), 1)
        setting = report.settings[0]
        self.assertFalse(setting.compared)
        self.assertEqual(setting.name, 'custom')
        self.assertEqual(len(setting.solve.policy.thresholds), 6)
        self.assertTrue(report.passed)


class TestReproduceCommand(unittest.TestCase):
    """Test the reproduce-paper command"""

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.runner = CliRunner(mix_stderr=False)

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)
        logging.getLogger().handlers.clear()

    def test_reference(self):
        result = self.runner.invoke(cli, ['reproduce-paper', '--out', self.tmp])
        self.assertEqual(result.exit_code, 0, result.stderr)
        self.assertEqual(json.loads(result.stdout)['status'], 'PASS')
        with open(os.path.join(self.tmp, 'reproduction.json'), encoding='utf-8') as f:
            self.assertEqual(json.load(f)['status'], 'PASS')

    def test_repeated_runs_are_identical(self):
        outputs = []
        for name in ('first', 'second'):
            out = os.path.join(self.tmp, name)
            result = self.runner.invoke(cli, ['reproduce-paper', '--out', out])
            self.assertEqual(result.exit_code, 0, result.stderr)
            with open(os.path.join(out, 'reproduction.json'), 'rb') as f:
                outputs.append((result.stdout, f.read()))
        self.assertEqual(outputs[0], outputs[1])
        notes = json.loads(outputs[0][0])['settings'][1]['notes']
        self.assertEqual(len(notes), 1)

    def test_custom_setting_prints_grid(self):
        model = reference_params(vms_per_pu_b=2).to_json()
        config = write_text(self.tmp, 'b2.json', '{"model": %s}' % model)
        result = self.runner.invoke(cli, ['reproduce-paper', '--config', config, '--out', self.tmp])
        self.assertEqual(result.exit_code, 0, result.stderr)
        self.assertTrue(result.stdout.startswith('n1/n2,0,1,'))
        self.assertIn('"compared": false', result.stdout)


def run_tests():
    """Run all tests and print results"""
    suite = unittest.TestLoader().loadTestsFromModule(sys.modules[__name__])
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    print(f"Tests run: {result.testsRun}, failures: {len(result.failures)}, errors: {len(result.errors)}")
    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_tests()
    sys.exit(0 if success else 1)
