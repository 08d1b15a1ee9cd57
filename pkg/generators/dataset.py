"""
Threshold dataset generator

This module sweeps model parameters over a cartesian grid, solves each
combination for its optimal thresholds and collects (features, labels) rows
for the threshold estimator.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import ConfigError, ToolkitError
from model import ModelParams
from solver import SolverSettings
from utils import is_number

logger = logging.getLogger(__name__)

FEATURE_NAMES = ('R', 'lambda1', 'lambda2', 'mu1', 'mu2')


@dataclass(frozen=True)
class SweepSpec:
    """Swept values of R, lambda2 and mu2; everything else comes from ``base``."""
    values_R: Tuple[float, ...]
    values_lambda2: Tuple[float, ...]
    values_mu2: Tuple[float, ...]
    base: ModelParams

    def __post_init__(self):
        errors = []
        for name in ('values_R', 'values_lambda2', 'values_mu2'):
            values = tuple(getattr(self, name))
            if not values:
                errors.append(f"{name} must not be empty")
            object.__setattr__(self, name, values)
        if errors:
            raise ConfigError(errors)

    @property
    def size(self) -> int:
        return len(self.values_R) * len(self.values_lambda2) * len(self.values_mu2)

    def combinations(self) -> List[Tuple[float, float, float]]:
        """(R, lambda2, mu2) tuples in lexicographic order."""
        return list(itertools.product(sorted(self.values_R),
                                      sorted(self.values_lambda2),
                                      sorted(self.values_mu2)))

    def params_for(self, R: float, lambda2: float, mu2: float) -> ModelParams:
        return self.base.with_changes(reward_R=R, lambda2=lambda2, mu2=mu2)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'values_R': list(self.values_R),
            'values_lambda2': list(self.values_lambda2),
            'values_mu2': list(self.values_mu2),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base: ModelParams) -> 'SweepSpec':
        if not isinstance(data, dict):
            raise ConfigError(["sweep must be an object"])
        unknown = set(data) - {'values_R', 'values_lambda2', 'values_mu2'}
        errors = [f"Unknown sweep field: '{key}'" for key in sorted(unknown)]
        for key in ('values_R', 'values_lambda2', 'values_mu2'):
            values = data.get(key)
            if not isinstance(values, list) or not values or not all(map(is_number, values)):
                errors.append(f"sweep.{key} must be a nonempty list of numbers")
        if errors:
            raise ConfigError(errors)
        return cls(tuple(data['values_R']), tuple(data['values_lambda2']),
                   tuple(data['values_mu2']), base)


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Estimator training rows.

    ``features`` has one column per FEATURE_NAMES entry, ``labels`` one column
    per n1 holding D(n1) (-1 for reject-all). The per-feature min/max are
    captured when the dataset is built.
    """
    features: np.ndarray
    labels: np.ndarray
    feature_min: np.ndarray = field(default=None)
    feature_max: np.ndarray = field(default=None)

    def __post_init__(self):
        features = np.array(self.features, dtype=float).reshape(-1, len(FEATURE_NAMES))
        labels = np.array(self.labels, dtype=np.int64)
        if labels.ndim != 2 or labels.shape[0] != features.shape[0]:
            raise ConfigError([f"labels shape {labels.shape} does not match {features.shape[0]} rows"])
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 'labels', labels)
        if self.feature_min is None and features.size:
            object.__setattr__(self, 'feature_min', features.min(axis=0))
            object.__setattr__(self, 'feature_max', features.max(axis=0))

    def __len__(self) -> int:
        return self.features.shape[0]

    @property
    def label_count(self) -> int:
        return self.labels.shape[1]


def _solve_row(job):
    params, settings = job
    report = settings.run(params)
    return report.policy.thresholds


def features_of(params: ModelParams) -> List[float]:
    return [params.reward_R, params.lambda1, params.lambda2, params.mu1, params.mu2]


class ThresholdDatasetGenerator:
    """
    Build estimator datasets by solving every point of a parameter sweep
    """

    @classmethod
    def generate(cls, sweep: SweepSpec, settings: Optional[SolverSettings] = None,
                 workers: int = 1) -> Dataset:
        """
        Solve each (R, lambda2, mu2) combination and record its thresholds

        Args:
            sweep: the parameter sweep
            settings: solver options (auto cap by default)
            workers: process count; rows come out in the same order either way

        Returns:
            Dataset with rows ordered lexicographically by (R, lambda2, mu2)

        Raises:
            ToolkitError: The solver error of a failing point, prefixed with
                its parameter tuple
        """
        settings = settings or SolverSettings()
        combos = sweep.combinations()
        jobs = []
        for combo in combos:
            try:
                jobs.append((sweep.params_for(*combo), settings))
            except ToolkitError as e:
                raise type(e)([f"R={combo[0]}, lambda2={combo[1]}, mu2={combo[2]}: {msg}"
                               for msg in e.errors])

        labels = []
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = pool.map(_solve_row, jobs)
                labels = cls._collect(combos, results)
        else:
            labels = cls._collect(combos, map(_solve_row, jobs))

        features = [features_of(params) for params, _ in jobs]
        return Dataset(np.array(features), np.array(labels))

    @staticmethod
    def _collect(combos: Sequence[Tuple[float, float, float]], results) -> List[List[int]]:
        labels = []
        iterator = iter(results)
        for row, combo in enumerate(combos):
            try:
                thresholds = next(iterator)
            except ToolkitError as e:
                raise type(e)([f"R={combo[0]}, lambda2={combo[1]}, mu2={combo[2]}: {msg}"
                               for msg in e.errors])
            logger.info("dataset row %d/%d: R=%g lambda2=%g mu2=%g -> %s",
                        row + 1, len(combos), combo[0], combo[1], combo[2], thresholds)
            labels.append(thresholds)
        return labels


def build_dataset(sweep: SweepSpec, settings: Optional[SolverSettings] = None,
                  workers: int = 1) -> Dataset:
    return ThresholdDatasetGenerator.generate(sweep, settings, workers)


__all__ = [
    'FEATURE_NAMES',
    'SweepSpec',
    'Dataset',
    'ThresholdDatasetGenerator',
    'build_dataset',
    'features_of',
]
