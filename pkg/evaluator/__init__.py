"""
Evaluator module: value of arbitrary threshold policies.
"""

from .policy_evaluation import (
    DISCOUNT_EPSILON,
    StopKind,
    StopRule,
    PolicyValueGrid,
    discount_iterations,
    evaluate_policy,
    compare_grids
)

__all__ = [
    'DISCOUNT_EPSILON',
    'StopKind',
    'StopRule',
    'PolicyValueGrid',
    'discount_iterations',
    'evaluate_policy',
    'compare_grids'
]
