"""
Model of the preemptive-priority VM pool.

This module exposes the parameter and state types together with the
closed-form state functions (capacities, preemption counts, event rates,
holding cost) used by the solver, evaluator and simulator.
"""

from .params import REFERENCE_SETTING, Action, Event, HoldingCost, ModelParams, State, reference_params
from .capacity import (
    n1_max,
    check_state,
    busy_pu_vms,
    busy_su_vms,
    preempt_count,
    total_rate,
    uniformization_constant,
    holding_rate,
    available_actions,
    post_action_state,
    sojourn_rate,
    stage_reward,
    GridGeometry,
    grid_geometry
)

__all__ = [
    'Action',
    'Event',
    'HoldingCost',
    'ModelParams',
    'REFERENCE_SETTING',
    'reference_params',
    'State',
    'n1_max',
    'check_state',
    'busy_pu_vms',
    'busy_su_vms',
    'preempt_count',
    'total_rate',
    'uniformization_constant',
    'holding_rate',
    'available_actions',
    'post_action_state',
    'sojourn_rate',
    'stage_reward',
    'GridGeometry',
    'grid_geometry'
]
