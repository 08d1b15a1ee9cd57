"""
Reproduction Module

Embedded reference tables and the run that checks the solver, the policy
evaluator and the threshold bounds against them.
"""

from .goldens import (
    SOLVER_TOLERANCE,
    EVALUATOR_TOLERANCE,
    GoldenSet,
    GOLDENS,
    table_thresholds,
    ESTIMATOR_REAL_THRESHOLDS,
    training_sweep,
    estimator_test_points
)
from .runner import ReproductionReport, SettingResult, check_setting, run_reproduction

__all__ = [
    'SOLVER_TOLERANCE',
    'EVALUATOR_TOLERANCE',
    'GoldenSet',
    'GOLDENS',
    'table_thresholds',
    'ESTIMATOR_REAL_THRESHOLDS',
    'training_sweep',
    'estimator_test_points',
    'ReproductionReport',
    'SettingResult',
    'check_setting',
    'run_reproduction'
]
