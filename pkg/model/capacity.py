"""
Closed-form state functions of the VM pool.

C1(n1) = b n1 VMs hold type-1 tasks, C2 = min(C - C1, n2) VMs hold type-2
tasks and Cv counts the in-service type-2 tasks a newly admitted type-1 task
would preempt. The total event rate beta0 and the uniformization constant c
are built from them.
"""
from typing import FrozenSet, NamedTuple

import numpy as np

from errors import ConfigError, DomainError
from .params import Action, Event, HoldingCost, ModelParams, State


def n1_max(params: ModelParams) -> int:
    """
    Largest type-1 count N1 = C / b.

    Raises:
        ConfigError: If C is not an exact multiple of b
    """
    if params.capacity_C % params.vms_per_pu_b != 0:
        raise ConfigError([f"capacity_C ({params.capacity_C}) is not a multiple "
                           f"of vms_per_pu_b ({params.vms_per_pu_b})"])
    return params.capacity_C // params.vms_per_pu_b


def check_state(params: ModelParams, s: State) -> State:
    if not 0 <= s.n1 <= n1_max(params) or s.n2 < 0:
        raise DomainError([f"State ({s.n1}, {s.n2}) outside 0..{n1_max(params)} x 0..inf"])
    return s


def busy_pu_vms(params: ModelParams, n1: int) -> int:
    """C1(n1) = b * n1."""
    if not 0 <= n1 <= n1_max(params):
        raise DomainError([f"n1={n1} outside 0..{n1_max(params)}"])
    return params.vms_per_pu_b * n1


def busy_su_vms(params: ModelParams, s: State) -> int:
    """C2(n1, n2) = min(C - C1, n2); n2 - C2 tasks wait in the buffer."""
    check_state(params, s)
    return min(params.capacity_C - busy_pu_vms(params, s.n1), s.n2)


def preempt_count(params: ModelParams, s: State) -> int:
    """Cv: in-service type-2 tasks displaced by admitting one more type-1 task."""
    check_state(params, s)
    if s.n1 == n1_max(params):
        return 0
    c1 = busy_pu_vms(params, s.n1)
    c2 = busy_su_vms(params, s)
    return max(c1 + c2 + params.vms_per_pu_b - params.capacity_C, 0)


def total_rate(params: ModelParams, s: State) -> float:
    """beta0(s) = lambda1 + lambda2 + C1 mu1 + C2 mu2."""
    c1 = busy_pu_vms(params, check_state(params, s).n1)
    c2 = busy_su_vms(params, s)
    return params.lambda1 + params.lambda2 + c1 * params.mu1 + c2 * params.mu2


def uniformization_constant(params: ModelParams) -> float:
    """c = lambda1 + lambda2 + C max(mu1, mu2); dominates beta0 on every state."""
    return params.lambda1 + params.lambda2 + params.capacity_C * max(params.mu1, params.mu2)


def holding_rate(holding: HoldingCost, s: State) -> float:
    return holding.rate(s.n1, s.n2)


def available_actions(params: ModelParams, s: State, event: Event) -> FrozenSet[Action]:
    """Departures only continue (and need a task in service); arrivals admit or reject."""
    check_state(params, s)
    if event is Event.D1:
        return frozenset({Action.CONTINUE}) if s.n1 > 0 else frozenset()
    if event is Event.D2:
        return frozenset({Action.CONTINUE}) if busy_su_vms(params, s) > 0 else frozenset()
    if event is Event.A1 and s.n1 == n1_max(params):
        return frozenset({Action.REJECT})
    return frozenset({Action.ADMIT, Action.REJECT})


def post_action_state(params: ModelParams, s: State, event: Event, action: Action) -> State:
    if action not in available_actions(params, s, event):
        raise DomainError([f"Action {action.value} not available for {event.value} at {s.as_tuple()}"])
    if event is Event.D1:
        return State(s.n1 - 1, s.n2)
    if event is Event.D2:
        return State(s.n1, s.n2 - 1)
    if action is Action.REJECT:
        return s
    if event is Event.A1:
        return State(s.n1 + 1, s.n2)
    return State(s.n1, s.n2 + 1)


def sojourn_rate(params: ModelParams, s: State, event: Event, action: Action) -> float:
    """beta(s^, a): the total event rate evaluated at the post-action state."""
    return total_rate(params, post_action_state(params, s, event, action))


def stage_reward(params: ModelParams, s: State, event: Event, action: Action) -> float:
    """
    Expected discounted reward until the next epoch: k + c / (alpha + beta).

    k is -Cv r for an admitted type-1 task, +R for an admitted type-2 task
    and 0 otherwise; c is minus the holding rate of the post-action state.
    """
    after = post_action_state(params, s, event, action)
    lump = 0.0
    if action is Action.ADMIT and event is Event.A1:
        lump = -preempt_count(params, s) * params.preempt_cost_r
    elif action is Action.ADMIT and event is Event.A2:
        lump = params.reward_R
    beta = total_rate(params, after)
    return lump - holding_rate(params.holding, after) / (params.alpha + beta)


class GridGeometry(NamedTuple):
    """State functions tabulated on 0..N1 x 0..cap, each of shape (N1+1, cap+1)."""
    n1: np.ndarray
    n2: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    cv: np.ndarray
    beta0: np.ndarray
    holding: np.ndarray


def grid_geometry(params: ModelParams, cap: int) -> GridGeometry:
    N1 = n1_max(params)
    shape = (N1 + 1, cap + 1)
    n1 = np.broadcast_to(np.arange(N1 + 1)[:, None], shape)
    n2 = np.broadcast_to(np.arange(cap + 1)[None, :], shape)
    c1 = params.vms_per_pu_b * n1
    c2 = np.minimum(params.capacity_C - c1, n2)
    cv = np.where(n1 < N1, np.maximum(c1 + c2 + params.vms_per_pu_b - params.capacity_C, 0), 0)
    beta0 = params.lambda1 + params.lambda2 + c1 * params.mu1 + c2 * params.mu2
    holding = np.broadcast_to(params.holding.rate(n1, n2), shape).astype(float)
    return GridGeometry(n1, n2, c1, c2, cv, beta0, holding)


__all__ = [
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
    'grid_geometry',
]
