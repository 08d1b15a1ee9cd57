"""
Solver module for the optimal admission policy.

Uniformized value iteration on the collapsed value grid X(n1, n2), policy
extraction and verification of the control-limit structure.
"""

from .grid import REJECT_ALL, BoundaryRule, SolveReport, ThresholdPolicy, ValueGrid
from .value_iteration import (
    AUTO,
    DEFAULT_TOL,
    DEFAULT_MAX_ITER,
    UniformizedKernel,
    admit_transform,
    pu_arrival_value,
    bellman_sweep,
    resolve_cap,
    check_stopping,
    iterate,
    extract_policy,
    solve,
    SolverSettings
)

__all__ = [
    'REJECT_ALL',
    'BoundaryRule',
    'SolveReport',
    'ThresholdPolicy',
    'ValueGrid',
    'AUTO',
    'DEFAULT_TOL',
    'DEFAULT_MAX_ITER',
    'UniformizedKernel',
    'admit_transform',
    'pu_arrival_value',
    'bellman_sweep',
    'resolve_cap',
    'check_stopping',
    'iterate',
    'extract_policy',
    'solve',
    'SolverSettings'
]
