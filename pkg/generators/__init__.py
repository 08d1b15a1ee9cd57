"""
Dataset Generators Module

This module provides functionality for generating threshold datasets from
parameter sweeps for the neural threshold estimator.
"""

from .dataset import (
    FEATURE_NAMES,
    SweepSpec,
    Dataset,
    ThresholdDatasetGenerator,
    build_dataset,
    features_of
)

__all__ = [
    'FEATURE_NAMES',
    'SweepSpec',
    'Dataset',
    'ThresholdDatasetGenerator',
    'build_dataset',
    'features_of'
]
