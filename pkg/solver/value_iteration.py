"""
Uniformized value iteration on the collapsed grid X(n1, n2).

One synchronous sweep evaluates, for every cell,

    X(n1,n2) = [ -f(n1,n2)
                 + lambda1 vA1(n1,n2) + lambda2 vA2(n1,n2)
                 + C1 mu1 X(n1-1,n2) + C2 mu2 X(n1,n2-1)
                 + (c - beta0(n1,n2)) X(n1,n2) ] / (alpha + c)

with vA2 = max(X(n1,n2), R + X(n1,n2+1)) and
vA1 = -Cv r + X(n1+1,n2) below N1, X(N1,n2) on the last row.
"""
import logging
import math
from typing import Optional, Tuple, Union

import numpy as np

from bounds import DEFAULT_SCAN_LIMIT, auto_cap
from errors import CapTooSmall, ConfigError, DomainError, NotConverged, NumericalError
from model import ModelParams, State, grid_geometry, n1_max, preempt_count, uniformization_constant
from utils import is_integer, is_number
from validators import validate_hypotheses
from .grid import REJECT_ALL, BoundaryRule, SolveReport, ThresholdPolicy, ValueGrid, _row_threshold

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 500000
AUTO = 'auto'
# An admit decision at cap-1 only proves the cap too small when it is strict.
TIE_TOLERANCE = 1e-9


class UniformizedKernel:
    """
    Precomputed sweep coefficients for one (params, cap, boundary) triple.

    Shared by optimal value iteration and fixed-policy evaluation; a sweep
    reads only the previous grid.
    """

    def __init__(self, params: ModelParams, cap: int,
                 boundary: BoundaryRule = BoundaryRule.FORCED_REJECT):
        if cap < 1:
            raise ConfigError([f"cap must be >= 1, got {cap}"])
        self.params = params
        self.cap = cap
        self.boundary = BoundaryRule(boundary)
        self.N1 = n1_max(params)
        self.c = uniformization_constant(params)
        self.scale = 1.0 / (params.alpha + self.c)

        geom = grid_geometry(params, cap)
        self.neg_holding = -geom.holding
        self.w_d1 = geom.c1 * params.mu1
        self.w_d2 = geom.c2 * params.mu2
        self.w_self = self.c - geom.beta0
        self.preempt_penalty = geom.cv[:-1] * params.preempt_cost_r

    @property
    def shape(self):
        return self.N1 + 1, self.cap + 1

    def pu_arrival_values(self, X: np.ndarray) -> np.ndarray:
        v = X.copy()
        v[:-1] = X[1:] - self.preempt_penalty
        return v

    def next_values(self, X: np.ndarray) -> np.ndarray:
        """X(n1, n2+1), with the boundary rule supplying column cap+1."""
        nxt = np.empty_like(X)
        nxt[:, :-1] = X[:, 1:]
        if self.boundary is BoundaryRule.EXTRAPOLATE:
            nxt[:, -1] = 2.0 * X[:, -1] - X[:, -2]
        else:
            nxt[:, -1] = X[:, -1]
        return nxt

    def admit_gain(self, X: np.ndarray) -> np.ndarray:
        """R + X(n1, n2+1) - X(n1, n2); -inf where admission is not allowed."""
        gain = self.params.reward_R + self.next_values(X) - X
        if self.boundary is BoundaryRule.FORCED_REJECT:
            gain[:, -1] = -np.inf
        return gain

    def apply(self, X: np.ndarray, su_arrival: np.ndarray) -> np.ndarray:
        p = self.params
        from_d1 = np.zeros_like(X)
        from_d1[1:] = X[:-1]
        from_d2 = np.zeros_like(X)
        from_d2[:, 1:] = X[:, :-1]
        total = (self.neg_holding
                 + p.lambda1 * self.pu_arrival_values(X)
                 + p.lambda2 * su_arrival
                 + self.w_d1 * from_d1
                 + self.w_d2 * from_d2
                 + self.w_self * X)
        return total * self.scale

    def optimal_sweep(self, X: np.ndarray) -> np.ndarray:
        return self.apply(X, X + np.maximum(self.admit_gain(X), 0.0))

    def policy_sweep(self, X: np.ndarray, admit: np.ndarray) -> np.ndarray:
        su_arrival = np.where(admit, self.params.reward_R + self.next_values(X), X)
        return self.apply(X, su_arrival)

    def residuals(self, X: np.ndarray) -> np.ndarray:
        """Cell-wise |X - T X|; ~0 everywhere at the fixed point."""
        return np.abs(self.optimal_sweep(X) - X)


def admit_transform(x_now: float, x_next: float, R: float) -> Tuple[float, bool]:
    """
    Type-2 arrival value max(X(n1,n2), R + X(n1,n2+1)).

    Returns:
        tuple: (value, admit); a tie counts as admit
    """
    admit_value = R + x_next
    if admit_value >= x_now:
        return admit_value, True
    return x_now, False


def pu_arrival_value(grid: ValueGrid, params: ModelParams, s: State) -> float:
    """Type-1 arrival value: -Cv r + X(n1+1, n2) below N1, X(N1, n2) on the last row."""
    N1 = n1_max(params)
    if grid.n1_size != N1 + 1:
        raise DomainError([f"Grid has {grid.n1_size} rows, model needs {N1 + 1}"])
    if s.n2 > grid.cap or s.n1 > N1:
        raise DomainError([f"State {s.as_tuple()} outside grid 0..{N1} x 0..{grid.cap}"])
    if s.n1 == N1:
        return grid.at(s.n1, s.n2)
    return -preempt_count(params, s) * params.preempt_cost_r + grid.at(s.n1 + 1, s.n2)


def bellman_sweep(grid_in: ValueGrid, params: ModelParams, cap: int,
                  boundary: BoundaryRule = BoundaryRule.FORCED_REJECT) -> ValueGrid:
    """One synchronous (Jacobi) sweep of the uniformized optimality recursion."""
    kernel = UniformizedKernel(params, cap, boundary)
    if grid_in.shape != kernel.shape:
        raise DomainError([f"Grid shape {grid_in.shape} does not match {kernel.shape}"])
    return ValueGrid(kernel.optimal_sweep(np.array(grid_in.values)))


def resolve_cap(params: ModelParams, cap: Union[int, str], scan_limit: int = DEFAULT_SCAN_LIMIT) -> int:
    if cap == AUTO or cap is None:
        return auto_cap(params, scan_limit)
    if isinstance(cap, bool) or not isinstance(cap, int) or cap < 2:
        raise ConfigError([f"cap must be 'auto' or an integer >= 2, got {cap!r}"])
    return cap


def check_stopping(tol, max_iter):
    """Raise ConfigError unless tol is a positive finite number and max_iter an integer >= 1."""
    errors = []
    if not is_number(tol) or not (math.isfinite(tol) and tol > 0):
        errors.append(f"tol must be a positive number, got {tol!r}")
    if not is_integer(max_iter) or max_iter < 1:
        errors.append(f"max_iter must be an integer >= 1, got {max_iter!r}")
    if errors:
        raise ConfigError(errors)


def iterate(kernel: UniformizedKernel, step, tol: float, max_iter: int,
            what: str = 'value iteration'):
    """
    Run ``step`` from the zero grid until the sup-norm change drops below tol.

    Returns:
        tuple: (grid array, iterations, residual history)
    """
    check_stopping(tol, max_iter)
    X = np.zeros(kernel.shape)
    history = []
    for iteration in range(1, max_iter + 1):
        X_new = step(X)
        residual = float(np.max(np.abs(X_new - X)))
        history.append(residual)
        X = X_new
        if not np.isfinite(residual):
            raise NumericalError([f"{what} produced non-finite values at iteration {iteration}"])
        if residual < tol:
            return X, iteration, np.array(history)
    raise NotConverged([f"{what} stopped after {max_iter} iterations "
                        f"with residual {history[-1]:.3e} (tol {tol:.1e})"])


def extract_policy(grid: ValueGrid, params: ModelParams, cap: Optional[int] = None,
                   boundary: BoundaryRule = BoundaryRule.FORCED_REJECT) -> ThresholdPolicy:
    """
    Read the control-limit policy off a converged grid.

    D(n1) is the largest n2 whose arrival is admitted; REJECT_ALL when even
    n2 = 0 rejects.

    Raises:
        NonThresholdStructure: If some row's admit set is not a prefix in n2
    """
    if cap is None:
        cap = grid.cap
    elif cap != grid.cap:
        raise DomainError([f"cap {cap} does not match the grid's cap {grid.cap}"])
    kernel = UniformizedKernel(params, cap, boundary)
    admit = kernel.admit_gain(np.array(grid.values)) >= 0.0
    return ThresholdPolicy(tuple(_row_threshold(row, n1) for n1, row in enumerate(admit)))


def _check_cap(kernel: UniformizedKernel, X: np.ndarray, policy: ThresholdPolicy):
    edge = kernel.cap - 1
    gain = kernel.admit_gain(X)[:, edge]
    tight = [n1 for n1, d in enumerate(policy.d)
             if d >= edge and gain[n1] > TIE_TOLERANCE * max(1.0, abs(X[n1, edge]))]
    if tight:
        raise CapTooSmall([f"admit region of row n1={n1} reaches n2={edge} (cap {kernel.cap})"
                           for n1 in tight])


def solve(params: ModelParams, cap: Union[int, str] = AUTO, tol: float = DEFAULT_TOL,
          max_iter: int = DEFAULT_MAX_ITER,
          boundary: BoundaryRule = BoundaryRule.FORCED_REJECT,
          scan_limit: int = DEFAULT_SCAN_LIMIT) -> SolveReport:
    """
    Compute the discounted-optimal value grid and its control-limit policy

    Args:
        params: model parameters
        cap: truncation cap for n2, or 'auto' (upper bound + margin)
        tol: sup-norm stopping tolerance
        max_iter: iteration budget
        boundary: arrival rule at n2 = cap

    Returns:
        SolveReport

    Raises:
        NotConverged: If tol is not reached within max_iter sweeps
        CapTooSmall: If the admit region strictly reaches cap - 1
        NonThresholdStructure: If an admit set is not a prefix in n2
    """
    cap = resolve_cap(params, cap, scan_limit)
    kernel = UniformizedKernel(params, cap, boundary)
    hypotheses = validate_hypotheses(params.holding, kernel.N1, cap)
    if not hypotheses.passed:
        logger.warning("Holding cost %s violates structural hypotheses: %s",
                       params.holding.describe(), '; '.join(hypotheses.errors))

    logger.info("Solving on %dx%d grid (c=%g, cap=%d, tol=%g)",
                kernel.N1 + 1, cap + 1, kernel.c, cap, tol)
    X, iterations, history = iterate(kernel, kernel.optimal_sweep, tol, max_iter)
    logger.info("Converged after %d sweeps, residual %.3e", iterations, history[-1])

    grid = ValueGrid(X)
    policy = extract_policy(grid, params, cap, boundary)
    _check_cap(kernel, X, policy)
    return SolveReport(grid=grid, policy=policy, iterations=iterations,
                       residual=float(history[-1]), cap=cap,
                       hypothesis_report=hypotheses, tol=tol,
                       residual_history=history)


class SolverSettings:
    """Bundle of solve() options carried through dataset sweeps and the CLI."""

    def __init__(self, cap: Union[int, str] = AUTO, tol: float = DEFAULT_TOL,
                 max_iter: int = DEFAULT_MAX_ITER,
                 boundary: BoundaryRule = BoundaryRule.FORCED_REJECT):
        self.cap = cap
        self.tol = tol
        self.max_iter = max_iter
        self.boundary = BoundaryRule(boundary)
        check_stopping(tol, max_iter)

    def run(self, params: ModelParams) -> SolveReport:
        return solve(params, cap=self.cap, tol=self.tol, max_iter=self.max_iter,
                     boundary=self.boundary)

    def to_dict(self):
        return {'cap': self.cap, 'tol': self.tol, 'max_iter': self.max_iter,
                'boundary': self.boundary.value}

    @classmethod
    def from_dict(cls, data):
        data = dict(data or {})
        unknown = set(data) - {'cap', 'tol', 'max_iter', 'boundary'}
        if unknown:
            raise ConfigError([f"Unknown solver field: '{key}'" for key in sorted(unknown)])
        try:
            return cls(**data)
        except ValueError as e:
            raise ConfigError([str(e)])


__all__ = [
    'AUTO',
    'DEFAULT_TOL',
    'DEFAULT_MAX_ITER',
    'REJECT_ALL',
    'UniformizedKernel',
    'admit_transform',
    'pu_arrival_value',
    'bellman_sweep',
    'resolve_cap',
    'check_stopping',
    'iterate',
    'extract_policy',
    'solve',
    'SolverSettings',
]
