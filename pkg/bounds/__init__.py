"""
Threshold bounds module.

Closed-form lower and upper bounds on the optimal admission threshold, the
reject-everything case, the bracket check of solver output against them and
the automatic truncation cap.
"""

from .threshold_bounds import (
    DEFAULT_SCAN_LIMIT,
    CAP_MARGIN,
    NO_LOWER_BOUND,
    BoundsResult,
    BracketReport,
    lower_bound,
    upper_bound,
    compute_bounds,
    auto_cap,
    bracket_check
)

__all__ = [
    'DEFAULT_SCAN_LIMIT',
    'CAP_MARGIN',
    'NO_LOWER_BOUND',
    'BoundsResult',
    'BracketReport',
    'lower_bound',
    'upper_bound',
    'compute_bounds',
    'auto_cap',
    'bracket_check'
]
