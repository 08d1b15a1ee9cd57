"""
Monte Carlo discrete-event simulation of the VM pool under a threshold policy.

Each replication starts at the configured state at t = 0 and races four
exponential clocks (lambda1, lambda2, C1 mu1, C2 mu2). Holding cost accrues in
closed form between events; lump rewards are discounted at their event time.
A replication stops once exp(-alpha t) falls below the discount floor.

Replications are simulated in fixed-size chunks, vectorised over the chunk;
chunk i draws from its own PCG64 stream derived from (seed, i), so results
do not depend on how many worker threads run the chunks.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import numpy as np
from scipy import stats

from errors import ConfigError, InfeasibleEvent
from model import Event, ModelParams, State, busy_su_vms, check_state, n1_max, preempt_count
from solver import ThresholdPolicy
from utils import is_integer, is_number

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20200101
DEFAULT_CHUNK = 1024
Z_95 = float(stats.norm.ppf(0.975))


@dataclass(frozen=True)
class SimConfig:
    discount_floor: float = 1e-6
    replications: int = 10000
    seed: int = DEFAULT_SEED
    initial: State = field(default_factory=lambda: State(0, 0))
    workers: int = 1
    chunk_size: int = DEFAULT_CHUNK
    check_states: bool = False

    def __post_init__(self):
        errors = []
        if not is_number(self.discount_floor) or not 0.0 < self.discount_floor < 1.0:
            errors.append(f"discount_floor must lie in (0, 1), got {self.discount_floor}")
        if not is_integer(self.replications) or self.replications < 1:
            errors.append(f"replications must be an integer >= 1, got {self.replications}")
        if not is_integer(self.seed) or not 0 <= self.seed < 2 ** 64:
            errors.append(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not is_integer(self.workers) or not is_integer(self.chunk_size) or self.workers < 1 or self.chunk_size < 1:
            errors.append("workers and chunk_size must be integers >= 1")
        if not isinstance(self.check_states, bool):
            errors.append(f"check_states must be a boolean, got {self.check_states!r}")
        if not isinstance(self.initial, State):
            errors.append(f"initial must be a State, got {self.initial!r}")
        if errors:
            raise ConfigError(errors)

    def horizon(self, alpha: float) -> float:
        return math.log(1.0 / self.discount_floor) / alpha

    def to_dict(self) -> Dict[str, Any]:
        return {
            'discount_floor': self.discount_floor,
            'replications': self.replications,
            'seed': self.seed,
            'initial': list(self.initial.as_tuple()),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SimConfig':
        data = dict(data or {})
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError([f"Unknown sim field: '{key}'" for key in sorted(unknown)])
        if 'initial' in data:
            initial = data['initial']
            if not isinstance(initial, (list, tuple)) or len(initial) != 2 or not all(map(is_integer, initial)):
                raise ConfigError(["sim.initial must be a pair [n1, n2]"])
            data['initial'] = State(initial[0], initial[1])
        return cls(**data)


@dataclass(frozen=True)
class SimResult:
    mean: float
    std_error: float
    ci95: Tuple[float, float]
    replications: int
    events_total: int
    seed: int = DEFAULT_SEED

    def contains(self, value: float) -> bool:
        return self.ci95[0] <= value <= self.ci95[1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'mean': self.mean,
            'std_error': self.std_error,
            'ci95': list(self.ci95),
            'replications': self.replications,
            'events_total': self.events_total,
            'seed': self.seed,
        }


def step(params: ModelParams, s: State, event: Event, policy: ThresholdPolicy):
    """
    Apply one event to a state under a threshold policy

    Returns:
        tuple: (next state, undiscounted lump reward, admitted flag)

    Raises:
        InfeasibleEvent: For a departure with no matching task in service
    """
    check_state(params, s)
    N1 = n1_max(params)
    if event is Event.A1:
        if s.n1 == N1:
            return s, 0.0, False
        # preempted type-2 tasks go back to the buffer, so n2 is unchanged
        return State(s.n1 + 1, s.n2), -preempt_count(params, s) * params.preempt_cost_r, True
    if event is Event.A2:
        if policy.admits(s.n1, s.n2):
            return State(s.n1, s.n2 + 1), params.reward_R, True
        return s, 0.0, False
    if event is Event.D1:
        if s.n1 == 0:
            raise InfeasibleEvent([f"no type-1 task in service at {s.as_tuple()}"])
        return State(s.n1 - 1, s.n2), 0.0, False
    if busy_su_vms(params, s) == 0:
        raise InfeasibleEvent([f"no type-2 task in service at {s.as_tuple()}"])
    return State(s.n1, s.n2 - 1), 0.0, False


def _run_chunk(params: ModelParams, thresholds: np.ndarray, config: SimConfig,
               size: int, index: int):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(config.seed, spawn_key=(index,))))
    N1 = n1_max(params)
    b, C = params.vms_per_pu_b, params.capacity_C
    lam1, lam2, alpha = params.lambda1, params.lambda2, params.alpha
    horizon = config.horizon(alpha)

    n1 = np.full(size, config.initial.n1, dtype=np.int64)
    n2 = np.full(size, config.initial.n2, dtype=np.int64)
    t = np.zeros(size)
    total = np.zeros(size)
    events = 0
    active = np.arange(size)

    while active.size:
        a1, a2, ta = n1[active], n2[active], t[active]
        c1 = b * a1
        c2 = np.minimum(C - c1, a2)
        d1_rate = c1 * params.mu1
        beta = lam1 + lam2 + d1_rate + c2 * params.mu2

        t_next = ta + rng.standard_exponential(active.size) / beta
        pick = rng.random(active.size) * beta
        fires = t_next < horizon
        t_stop = np.where(fires, t_next, horizon)
        disc_stop = np.exp(-alpha * t_stop)
        reward = -params.holding.rate(a1, a2) * (np.exp(-alpha * ta) - disc_stop) / alpha

        is_a1 = pick < lam1
        is_a2 = ~is_a1 & (pick < lam1 + lam2)
        is_d1 = ~is_a1 & ~is_a2 & (pick < lam1 + lam2 + d1_rate)
        is_d2 = ~(is_a1 | is_a2 | is_d1)

        pu_in = is_a1 & (a1 < N1)
        su_in = is_a2 & (a2 <= thresholds[a1])
        cv = np.where(a1 < N1, np.maximum(c1 + c2 + b - C, 0), 0)
        lump = np.where(pu_in, -cv * params.preempt_cost_r, 0.0) + np.where(su_in, params.reward_R, 0.0)
        reward += np.where(fires, lump * disc_stop, 0.0)

        new1 = a1 + pu_in.astype(np.int64) - is_d1.astype(np.int64)
        new2 = a2 + su_in.astype(np.int64) - is_d2.astype(np.int64)
        n1[active] = np.where(fires, new1, a1)
        n2[active] = np.where(fires, new2, a2)
        if config.check_states and ((n1 < 0).any() or (n1 > N1).any() or (n2 < 0).any()):
            raise InfeasibleEvent([f"chunk {index} left the state space"])

        total[active] += reward
        t[active] = t_stop
        events += int(fires.sum())
        active = active[fires]

    logger.debug("chunk %d: %d replications, %d events", index, size, events)
    return total, events


def simulate(params: ModelParams, policy: ThresholdPolicy, config: SimConfig = SimConfig()) -> SimResult:
    """
    Estimate the total expected discounted reward of a policy from config.initial

    Returns:
        SimResult with mean, standard error and normal 95% interval
    """
    check_state(params, config.initial)
    if policy.N1 != n1_max(params):
        raise ConfigError([f"Policy has {policy.N1 + 1} rows, model needs {n1_max(params) + 1}"])
    thresholds = np.array(policy.d, dtype=np.int64)

    sizes = [min(config.chunk_size, config.replications - start)
             for start in range(0, config.replications, config.chunk_size)]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        chunks = list(pool.map(lambda job: _run_chunk(params, thresholds, config, *job),
                               [(size, index) for index, size in enumerate(sizes)]))

    values = np.concatenate([chunk[0] for chunk in chunks])
    events_total = sum(chunk[1] for chunk in chunks)
    n = values.size
    mean = math.fsum(values) / n
    std_error = float(stats.sem(values)) if n > 1 else 0.0
    half = Z_95 * std_error
    return SimResult(mean=mean, std_error=std_error, ci95=(mean - half, mean + half),
                     replications=n, events_total=events_total, seed=config.seed)


__all__ = ['DEFAULT_SEED', 'SimConfig', 'SimResult', 'step', 'simulate']
