"""
End-to-end reproduction of the published reference tables.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from bounds import bracket_check, compute_bounds
from errors import GoldenMismatch, ToolkitError
from evaluator import compare_grids, evaluate_policy
from model import ModelParams
from solver import SolveReport, SolverSettings
from .goldens import (
    ESTIMATOR_REAL_THRESHOLDS,
    EVALUATOR_TOLERANCE,
    GOLDENS,
    SOLVER_TOLERANCE,
    GoldenSet,
    estimator_test_points,
    training_sweep,
)

logger = logging.getLogger(__name__)


def _cell_mismatches(label: str, computed: np.ndarray, golden: np.ndarray, tol: float) -> List[str]:
    n2_count = golden.shape[1]
    if computed.shape[1] < n2_count or computed.shape[0] != golden.shape[0]:
        return [f"{label}: grid {computed.shape} does not cover the table {golden.shape}"]
    window = computed[:, :n2_count]
    bad = np.argwhere(np.abs(window - golden) > tol)
    return [f"{label} ({n1},{n2}): got {window[n1, n2]:.4f}, expected {golden[n1, n2]:.2f}"
            for n1, n2 in bad]


@dataclass
class SettingResult:
    name: str
    params: ModelParams
    solve: SolveReport
    evaluated: Optional[np.ndarray] = None
    evaluator_gap: Optional[float] = None
    bracket: Optional[Dict[str, Any]] = None
    mismatches: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    compared: bool = True

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'name': self.name,
            'compared': self.compared,
            'thresholds': self.solve.policy.thresholds,
            'iterations': self.solve.iterations,
            'cap': self.solve.cap,
            'mismatches': self.mismatches,
            'notes': self.notes,
        }
        if self.evaluator_gap is not None:
            data['evaluator_gap'] = self.evaluator_gap
        if self.bracket is not None:
            data['bracket'] = self.bracket
        return data


@dataclass
class ReproductionReport:
    settings: List[SettingResult] = field(default_factory=list)
    estimator: Optional[Dict[str, Any]] = None

    @property
    def mismatches(self) -> List[str]:
        return [m for s in self.settings for m in s.mismatches]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def raise_for_mismatch(self):
        if self.mismatches:
            raise GoldenMismatch(self.mismatches)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'status': 'PASS' if self.passed else 'FAIL',
            'settings': [s.to_dict() for s in self.settings],
        }
        if self.estimator is not None:
            data['estimator'] = self.estimator
        return data


def check_setting(golden: GoldenSet, settings: Optional[SolverSettings] = None) -> SettingResult:
    """Solve, evaluate and bound one reference setting against its tables."""
    settings = settings or SolverSettings()
    params = golden.params()
    report = settings.run(params)
    result = SettingResult(golden.name, params, report)
    mismatches = result.mismatches

    mismatches.extend(_cell_mismatches(f"{golden.name} optimal", report.grid.values,
                                       golden.optimal, SOLVER_TOLERANCE))
    if tuple(report.policy.thresholds) != tuple(golden.thresholds):
        mismatches.append(f"{golden.name} thresholds: got {report.policy.thresholds}, "
                          f"expected {list(golden.thresholds)}")
    implied = golden.implied_thresholds()
    if implied != list(golden.thresholds):
        mismatches.append(f"{golden.name} table implies thresholds {implied}, "
                          f"expected {list(golden.thresholds)}")
    if golden.printed_thresholds is not None and tuple(golden.printed_thresholds) != tuple(golden.thresholds):
        result.notes.append(f"{golden.name} printed thresholds {list(golden.printed_thresholds)} "
                            f"disagree with the printed table, which implies {implied}")
        logger.warning(result.notes[-1])

    evaluated = evaluate_policy(params, report.policy, cap=report.cap, boundary=settings.boundary)
    result.evaluated = evaluated.values
    result.evaluator_gap = compare_grids(evaluated, report.grid)
    mismatches.extend(_cell_mismatches(f"{golden.name} evaluated", evaluated.values,
                                       golden.evaluated, EVALUATOR_TOLERANCE))
    if result.evaluator_gap > EVALUATOR_TOLERANCE:
        mismatches.append(f"{golden.name}: evaluated grid differs from optimal grid "
                          f"by {result.evaluator_gap:.4f}")

    bounds = compute_bounds(params)
    if bounds.upper != golden.upper_bound:
        mismatches.append(f"{golden.name} upper bound: got {bounds.upper}, expected {golden.upper_bound}")
    if bounds.lower != golden.lower_bound:
        mismatches.append(f"{golden.name} lower bound: got {bounds.lower}, expected {golden.lower_bound}")
    try:
        result.bracket = bracket_check(params, report.policy).to_dict()
    except ToolkitError as e:
        mismatches.extend(f"{golden.name} bracket: {msg}" for msg in e.errors)

    logger.info("%s: %d mismatches", golden.name, len(mismatches))
    return result


def compare_estimator(settings: Optional[SolverSettings] = None, workers: int = 1,
                      hyper=None) -> Dict[str, Any]:
    """
    Train on the reference sweep and set the network beside the printed
    thresholds; differences are reported, never raised.
    """
    from estimator import TrainSettings, evaluate_estimator, train
    from generators import build_dataset

    settings = settings or SolverSettings()
    dataset = build_dataset(training_sweep(), settings, workers=workers)
    mlp, train_report = train(dataset, hyper or TrainSettings())
    points = estimator_test_points()
    table = evaluate_estimator(mlp, points, training_sweep().base, settings)
    printed = []
    for row in table.rows:
        expected = list(ESTIMATOR_REAL_THRESHOLDS[row.features[0]])
        if expected != list(row.real):
            printed.append(f"R={row.features[0]}: solver {list(row.real)}, printed {expected}")
    return {'train': train_report.to_dict(), 'comparison': table.to_dict(),
            'printed_real_differences': printed}


def run_reproduction(goldens: Sequence[GoldenSet] = GOLDENS, params: Optional[ModelParams] = None,
                     settings: Optional[SolverSettings] = None, with_estimator: bool = False,
                     workers: int = 1) -> ReproductionReport:
    """
    Check the solver, evaluator and bounds against the reference tables

    Args:
        goldens: reference settings to check
        params: restrict the run to this setting; a setting without tables
            is solved and reported but nothing is compared
        settings: solver options
        with_estimator: also train and compare the threshold network

    Returns:
        ReproductionReport; call raise_for_mismatch() to turn failures into
        GoldenMismatch
    """
    settings = settings or SolverSettings()
    report = ReproductionReport()
    if params is None:
        selected = list(goldens)
    else:
        selected = [g for g in goldens if g.params() == params]
        if not selected:
            logger.warning("No reference tables for this setting; solving without comparison")
            report.settings.append(SettingResult('custom', params, settings.run(params), compared=False))

    for golden in selected:
        report.settings.append(check_setting(golden, settings))

    if with_estimator:
        report.estimator = compare_estimator(settings, workers=workers)
    return report


__all__ = [
    'SettingResult',
    'ReproductionReport',
    'check_setting',
    'compare_estimator',
    'run_reproduction',
]
