"""
Value grid, threshold policy and solve report types.
"""
import enum
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import DomainError, NonThresholdStructure


REJECT_ALL = -1


class BoundaryRule(str, enum.Enum):
    """What a type-2 arrival sees at the truncation edge n2 = cap."""
    FORCED_REJECT = 'forced_reject'
    EXTRAPOLATE = 'extrapolate'   # continue the last row difference linearly


@dataclass(frozen=True, eq=False)
class ValueGrid:
    """X(n1, n2) over 0..N1 x 0..cap, stored read-only."""
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 2:
            raise DomainError([f"Value grid must be 2-D, got shape {values.shape}"])
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def zeros(cls, N1: int, cap: int) -> 'ValueGrid':
        return cls(np.zeros((N1 + 1, cap + 1)))

    @property
    def n1_size(self) -> int:
        return self.values.shape[0]

    @property
    def n2_size(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    @property
    def cap(self) -> int:
        return self.n2_size - 1

    def at(self, n1: int, n2: int) -> float:
        if not (0 <= n1 < self.n1_size and 0 <= n2 < self.n2_size):
            raise DomainError([f"({n1}, {n2}) outside grid 0..{self.n1_size - 1} x 0..{self.cap}"])
        return float(self.values[n1, n2])

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))


@dataclass(frozen=True)
class ThresholdPolicy:
    """
    Control-limit rule: admit a type-2 arrival at (n1, n2) iff n2 <= D(n1).

    ``d`` holds one entry per n1; REJECT_ALL (-1) marks a row that admits
    nothing.
    """
    d: Tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        if not d:
            raise DomainError(["Policy needs at least one row"])
        if any(x < REJECT_ALL for x in d):
            raise DomainError([f"Thresholds must be >= {REJECT_ALL}, got {list(d)}"])
        object.__setattr__(self, 'd', d)

    @property
    def N1(self) -> int:
        return len(self.d) - 1

    @property
    def thresholds(self) -> List[int]:
        return list(self.d)

    def rejects_all(self, n1: Optional[int] = None) -> bool:
        if n1 is None:
            return all(x == REJECT_ALL for x in self.d)
        return self.d[n1] == REJECT_ALL

    def admits(self, n1: int, n2: int) -> bool:
        return n2 <= self.d[n1]

    def admit_mask(self, cap: int) -> np.ndarray:
        n2 = np.arange(cap + 1)[None, :]
        return n2 <= np.array(self.d)[:, None]

    def action_table(self, cap: int) -> np.ndarray:
        """0/1 matrix over 0..N1 x 0..cap, 1 meaning admit."""
        return self.admit_mask(cap).astype(int)

    @classmethod
    def from_action_table(cls, table) -> 'ThresholdPolicy':
        """
        Read thresholds back from a 0/1 action table.

        Raises:
            NonThresholdStructure: If some row is not a prefix of ones
        """
        table = np.asarray(table, dtype=bool)
        d = []
        for n1, row in enumerate(table):
            d.append(_row_threshold(row, n1))
        return cls(tuple(d))

    def check_cap(self, cap: int):
        too_large = [n1 for n1, x in enumerate(self.d) if x >= cap]
        if too_large:
            raise DomainError([f"Threshold D({n1})={self.d[n1]} not below cap {cap}" for n1 in too_large])

    def to_dict(self) -> Dict[str, Any]:
        return {'thresholds': list(self.d), 'reject_all_sentinel': REJECT_ALL}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ThresholdPolicy':
        if not isinstance(data, dict) or not isinstance(data.get('thresholds'), list):
            raise DomainError(["Policy document needs a 'thresholds' list"])
        return cls(tuple(data['thresholds']))


def _row_threshold(admits: Sequence[bool], n1: int) -> int:
    admits = np.asarray(admits, dtype=bool)
    count = int(admits.sum())
    if count == 0:
        return REJECT_ALL
    if not admits[:count].all():
        holes = [int(i) for i in np.flatnonzero(~admits[:count])]
        late = [int(i) for i in np.flatnonzero(admits[count:]) + count]
        raise NonThresholdStructure([f"row n1={n1}: rejects at n2={holes} but admits at n2={late}"])
    return count - 1


@dataclass(frozen=True, eq=False)
class SolveReport:
    grid: ValueGrid
    policy: ThresholdPolicy
    iterations: int
    residual: float
    cap: int
    hypothesis_report: Any
    tol: float = 0.0
    residual_history: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'iterations': self.iterations,
            'residual': self.residual,
            'tol': self.tol,
            'cap': self.cap,
            'thresholds': self.policy.thresholds,
            'hypotheses': self.hypothesis_report.to_dict(),
        }


__all__ = [
    'REJECT_ALL',
    'BoundaryRule',
    'ValueGrid',
    'ThresholdPolicy',
    'SolveReport',
]
