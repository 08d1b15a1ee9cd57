"""
Validation system for model parameters and holding costs

This module validates parameter documents before they become ModelParams and
scans holding-cost functions for the hypotheses the threshold theorems need.

Usage:
    >>> from validators import validate_params, validate_hypotheses
    >>> is_valid, errors = validate_params({'lambda1': 1})
    >>> if not is_valid:
    ...     print("Validation errors:", errors)

    >>> from model import HoldingCost
    >>> report = validate_hypotheses(HoldingCost.square_sum(), N1=2, n2_cap=50)
    >>> report.passed
    True
"""

from .params_validator import (
    validate_params,
    validate_params_strict,
    validate_params_json,
    validate_holding,
    FIELD_NAMES,
    HOLDING_KINDS,
    POLYNOMIAL_TERMS
)

from .hypothesis_validator import (
    validate_hypotheses,
    HypothesisCheck,
    ValidationReport,
    CONVEX_NONDECREASING,
    DIFFERENCE_MONOTONE
)

__all__ = [
    # Parameter documents
    'validate_params',
    'validate_params_strict',
    'validate_params_json',
    'validate_holding',
    'FIELD_NAMES',
    'HOLDING_KINDS',
    'POLYNOMIAL_TERMS',

    # Holding-cost hypotheses
    'validate_hypotheses',
    'HypothesisCheck',
    'ValidationReport',
    'CONVEX_NONDECREASING',
    'DIFFERENCE_MONOTONE'
]

__version__ = '1.0.0'
