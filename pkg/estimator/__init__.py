"""
Threshold Estimator Module

Neural network that maps model parameters to control-limit thresholds,
trained on solver-generated datasets.
"""

from .mlp import Mlp, finite_difference_gradients
from .training import (
    TrainSettings,
    TrainReport,
    ComparisonRow,
    ComparisonTable,
    split_rows,
    train,
    predict,
    params_for_features,
    evaluate_estimator
)

__all__ = [
    'Mlp',
    'finite_difference_gradients',
    'TrainSettings',
    'TrainReport',
    'ComparisonRow',
    'ComparisonTable',
    'split_rows',
    'train',
    'predict',
    'params_for_features',
    'evaluate_estimator'
]
