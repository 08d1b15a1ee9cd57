"""
Fixed-policy evaluation on the value grid.

The optimality recursion is iterated with the max over admit/reject replaced
by the policy's own choice (admit iff n2 <= D(n1)), giving the expected
total discounted reward V_D(n1, n2) of an arbitrary threshold policy.
"""
import enum
import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from errors import ConfigError, ShapeMismatch
from model import ModelParams, n1_max, uniformization_constant
from solver import AUTO, BoundaryRule, ThresholdPolicy, UniformizedKernel, ValueGrid, iterate, resolve_cap

logger = logging.getLogger(__name__)

# The default rule runs until the remaining discount weight drops below this.
DISCOUNT_EPSILON = 1e-6


class StopKind(str, enum.Enum):
    DISCOUNT = 'discount'     # fixed count k with (c/(alpha+c))^k < epsilon
    TOLERANCE = 'tolerance'   # sup-norm change < tol


@dataclass(frozen=True)
class StopRule:
    kind: StopKind = StopKind.DISCOUNT
    epsilon: float = DISCOUNT_EPSILON
    tol: float = 1e-9
    max_iter: int = 500000

    @classmethod
    def discount(cls, epsilon: float = DISCOUNT_EPSILON) -> 'StopRule':
        return cls(StopKind.DISCOUNT, epsilon=epsilon)

    @classmethod
    def tolerance(cls, tol: float = 1e-9, max_iter: int = 500000) -> 'StopRule':
        return cls(StopKind.TOLERANCE, tol=tol, max_iter=max_iter)


class PolicyValueGrid(ValueGrid):
    """V_D(n1, n2) of a fixed threshold policy; same layout as ValueGrid."""


def discount_iterations(params: ModelParams, epsilon: float = DISCOUNT_EPSILON) -> int:
    """Smallest k with (c / (alpha + c))^k < epsilon, c the uniformization constant."""
    c = uniformization_constant(params)
    modulus = c / (params.alpha + c)
    return math.floor(math.log(epsilon) / math.log(modulus)) + 1


def evaluate_policy(params: ModelParams, policy: ThresholdPolicy, cap: Union[int, str] = AUTO,
                    stop: StopRule = StopRule(),
                    boundary: BoundaryRule = BoundaryRule.FORCED_REJECT) -> PolicyValueGrid:
    """
    Expected total discounted reward of a threshold policy on every grid cell

    Args:
        params: model parameters
        policy: thresholds D(0..N1), each below cap
        cap: truncation cap or 'auto'
        stop: discount-count rule (default) or sup-norm tolerance rule

    Returns:
        PolicyValueGrid

    Raises:
        NotConverged: Tolerance rule only, when max_iter is exhausted
    """
    cap = resolve_cap(params, cap)
    if policy.N1 != n1_max(params):
        raise ConfigError([f"Policy has {policy.N1 + 1} rows, model needs {n1_max(params) + 1}"])
    policy.check_cap(cap)

    kernel = UniformizedKernel(params, cap, boundary)
    admit = policy.admit_mask(cap)

    def step(X):
        return kernel.policy_sweep(X, admit)

    if stop.kind is StopKind.TOLERANCE:
        X, iterations, history = iterate(kernel, step, stop.tol, stop.max_iter,
                                         what='policy evaluation')
        logger.info("Policy %s evaluated in %d sweeps, residual %.3e",
                    policy.thresholds, iterations, history[-1])
    else:
        iterations = discount_iterations(params, stop.epsilon)
        X = np.zeros(kernel.shape)
        for _ in range(iterations):
            X = step(X)
        logger.info("Policy %s evaluated with %d discounted sweeps", policy.thresholds, iterations)
    return PolicyValueGrid(X)


def compare_grids(a: ValueGrid, b: ValueGrid) -> float:
    """
    Sup-norm of the difference of two grids

    Raises:
        ShapeMismatch: If the grids differ in shape
    """
    va = np.asarray(a.values if isinstance(a, ValueGrid) else a, dtype=float)
    vb = np.asarray(b.values if isinstance(b, ValueGrid) else b, dtype=float)
    if va.shape != vb.shape:
        raise ShapeMismatch([f"{va.shape} vs {vb.shape}"])
    if va.size == 0:
        return 0.0
    return float(np.max(np.abs(va - vb)))


__all__ = [
    'DISCOUNT_EPSILON',
    'StopKind',
    'StopRule',
    'PolicyValueGrid',
    'discount_iterations',
    'evaluate_policy',
    'compare_grids',
]
