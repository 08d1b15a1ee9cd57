"""
Model parameters and state types.

ModelParams is the single configuration object of the toolkit: arrival and
service rates, pool geometry, economics and the holding cost. It serialises
to a JSON document with exactly its field names.
"""

import enum
import json
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Tuple

import numpy as np

from errors import ConfigError, DomainError
from validators.params_validator import (
    POLYNOMIAL_TERMS,
    validate_holding,
    validate_params_strict,
)


SQUARE_SUM_TERMS = (1.0, 1.0, 0.0, 0.0, 0.0, 0.0)
MONOMIALS = {'c20': 'x^2', 'c02': 'y^2', 'c11': 'xy', 'c10': 'x', 'c01': 'y', 'c00': '1'}


@dataclass(frozen=True)
class HoldingCost:
    """
    Holding cost rate f(n1, n2) = c20 x^2 + c02 y^2 + c11 xy + c10 x + c01 y + c00.

    ``SquareSum`` fixes f = x^2 + y^2; ``Polynomial`` takes the six
    coefficients in POLYNOMIAL_TERMS order.
    """
    kind: str = 'SquareSum'
    coefficients: Tuple[float, ...] = field(default=SQUARE_SUM_TERMS)

    def __post_init__(self):
        if self.kind == 'SquareSum':
            object.__setattr__(self, 'coefficients', SQUARE_SUM_TERMS)
        else:
            object.__setattr__(self, 'coefficients', tuple(float(c) for c in self.coefficients))
        is_valid, errors = validate_holding(self.to_dict())
        if not is_valid:
            raise ConfigError(errors)

    @classmethod
    def square_sum(cls) -> 'HoldingCost':
        return cls('SquareSum')

    @classmethod
    def polynomial(cls, c20=0.0, c02=0.0, c11=0.0, c10=0.0, c01=0.0, c00=0.0) -> 'HoldingCost':
        return cls('Polynomial', (c20, c02, c11, c10, c01, c00))

    def rate(self, n1, n2):
        """Evaluate f; accepts scalars or broadcastable numpy arrays."""
        x = np.asarray(n1, dtype=float)
        y = np.asarray(n2, dtype=float)
        c20, c02, c11, c10, c01, c00 = self.coefficients
        value = c20 * x * x + c02 * y * y + c11 * x * y + c10 * x + c01 * y + c00
        if np.ndim(value) == 0:
            return float(value)
        return value

    def delta_n2(self, n1, n2):
        """Forward difference f(n1, n2+1) - f(n1, n2)."""
        return self.rate(n1, np.asarray(n2) + 1) - self.rate(n1, n2)

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == 'SquareSum':
            return {'kind': 'SquareSum'}
        return {'kind': self.kind, 'coefficients': list(self.coefficients)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'HoldingCost':
        is_valid, errors = validate_holding(data)
        if not is_valid:
            raise ConfigError(errors)
        if data['kind'] == 'SquareSum':
            return cls.square_sum()
        return cls('Polynomial', tuple(data['coefficients']))

    def describe(self) -> str:
        if self.kind == 'SquareSum':
            return 'x^2 + y^2'
        terms = [f"{c:g}*{MONOMIALS[name]}" for c, name in zip(self.coefficients, POLYNOMIAL_TERMS) if c]
        return ' + '.join(terms) or '0'


@dataclass(frozen=True)
class ModelParams:
    """
    All parameters of the VM pool model.

    Type-1 (online) tasks take ``vms_per_pu_b`` VMs each and preempt type-2
    (batch) tasks; type-2 tasks take one VM and are the subject of admission
    control.
    """
    lambda1: float
    lambda2: float
    mu1: float
    mu2: float
    capacity_C: int
    vms_per_pu_b: int
    alpha: float
    reward_R: float
    preempt_cost_r: float
    holding: HoldingCost = field(default_factory=HoldingCost.square_sum)

    def __post_init__(self):
        if not isinstance(self.holding, HoldingCost):
            raise ConfigError(["holding must be a HoldingCost"])
        validate_params_strict(self.to_dict())

    @property
    def N1(self) -> int:
        return self.capacity_C // self.vms_per_pu_b

    def with_changes(self, **changes) -> 'ModelParams':
        """Copy with some fields replaced; the copy is validated again."""
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda1': self.lambda1,
            'lambda2': self.lambda2,
            'mu1': self.mu1,
            'mu2': self.mu2,
            'capacity_C': self.capacity_C,
            'vms_per_pu_b': self.vms_per_pu_b,
            'alpha': self.alpha,
            'reward_R': self.reward_R,
            'preempt_cost_r': self.preempt_cost_r,
            'holding': self.holding.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ModelParams':
        """
        Create ModelParams from a parameter document.

        Raises:
            ConfigError: On unknown or missing fields, bad values or C not a
                multiple of b
        """
        validate_params_strict(data)
        values = dict(data)
        values['holding'] = HoldingCost.from_dict(data['holding'])
        return cls(**values)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, json_string: str) -> 'ModelParams':
        try:
            data = json.loads(json_string)
        except json.JSONDecodeError as e:
            raise ConfigError([f"Invalid JSON: {str(e)}"])
        return cls.from_dict(data)


REFERENCE_SETTING = {
    'lambda1': 1.0,
    'lambda2': 2.0,
    'mu1': 6.0,
    'mu2': 8.0,
    'capacity_C': 10,
    'vms_per_pu_b': 5,
    'alpha': 0.1,
    'reward_R': 5.0,
    'preempt_cost_r': 0.5,
    'holding': {'kind': 'SquareSum'},
}


def reference_params(**changes) -> ModelParams:
    """The published reference setting (R=5 unless overridden)."""
    return ModelParams.from_dict(REFERENCE_SETTING).with_changes(**changes)


class Event(str, enum.Enum):
    A1 = 'A1'   # type-1 arrival
    A2 = 'A2'   # type-2 arrival
    D1 = 'D1'   # type-1 departure
    D2 = 'D2'   # type-2 departure


class Action(str, enum.Enum):
    CONTINUE = 'continue'
    ADMIT = 'admit'
    REJECT = 'reject'


@dataclass(frozen=True)
class State:
    """(n1, n2): type-1 tasks in service, type-2 tasks in service plus buffer."""
    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise DomainError([f"State counts must be nonnegative, got ({self.n1}, {self.n2})"])

    def as_tuple(self) -> Tuple[int, int]:
        return self.n1, self.n2


__all__ = ['HoldingCost', 'ModelParams', 'REFERENCE_SETTING', 'reference_params', 'State', 'Event', 'Action']
